#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tango/bench.hpp"
#include "tango/inventory.hpp"
#include "tango/policy.hpp"
#include "tango/route_io.hpp"
#include "tango/search.hpp"

namespace fs = std::filesystem;
using namespace tango;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnsolved = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchFlags {
  std::size_t top_n = 50;
  double k = 25.0;
  double c = 0.3;
  int radius = kDefaultFingerprintRadius;
  int width = kDefaultFingerprintWidth;
  std::size_t mcs_budget = kDefaultMcsBudget;
  bool unconstrained = false;
  std::string termination = "first_solution";
  std::string value_table;

  void add(CLI::App& app) {
    app.add_option("--top-n", top_n, "Candidates kept per expansion")->capture_default_str();
    app.add_option("--k", k, "TANGO cost scale")->capture_default_str();
    app.add_option("--c", c, "FMS weight in the TANGO reward")->capture_default_str();
    app.add_option("--radius", radius, "Fingerprint radius")->capture_default_str();
    app.add_option("--width", width, "Fingerprint width in bits")->capture_default_str();
    app.add_option("--mcs-budget", mcs_budget, "MCS search step budget")->capture_default_str();
    app.add_flag("--unconstrained", unconstrained, "Plain Retro*: any purchasable route counts");
    app.add_option("--termination", termination, "first_solution, proven_optimal or exhaust")
        ->capture_default_str();
    app.add_option("--value-table", value_table, "TSV of smiles and value estimate (default 0)");
  }

  SearchConfig config(std::size_t budget) const {
    SearchConfig cfg;
    cfg.expansion_budget = budget;
    cfg.top_n = top_n;
    cfg.tango = {k, c};
    cfg.similarity = {radius, width, mcs_budget};
    cfg.constrained = !unconstrained;
    cfg.termination = parse_termination(termination);
    cfg.validate();
    return cfg;
  }

  std::shared_ptr<const ValueOracle> value() const {
    if (value_table.empty()) return std::make_shared<ConstantValue>();
    return std::make_shared<TableValue>(TableValue::load(value_table));
  }
};

Molecule parse_named(const std::string& what, const std::string& smiles) {
  try {
    return parse_smiles(smiles);
  } catch (const ParseError& e) {
    throw UsageError(fmt::format("invalid {} SMILES '{}': {}", what, smiles, e.what()));
  }
}

void require_file(const std::string& what, const std::string& path) {
  if (!fs::is_regular_file(path)) throw UsageError(fmt::format("{} file not found: {}", what, path));
}

std::unique_ptr<ExpansionPolicy> load_policy(const std::string& corpus_path) {
  if (corpus_path.empty()) return std::make_unique<BondDisconnectionPolicy>();
  require_file("corpus", corpus_path);
  return std::make_unique<ReactionCorpus>(ReactionCorpus::load_jsonl(corpus_path));
}

Inventory load_inventory(const std::string& path) {
  if (path.empty()) return {};
  require_file("inventory", path);
  Inventory inv = Inventory::load(path);
  if (inv.skipped_lines() > 0) {
    std::cerr << "warning: skipped " << inv.skipped_lines() << " unparseable inventory lines\n";
  }
  return inv;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (const auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error writing " + path);
}

std::vector<BenchmarkInstance> read_instances(const std::string& path) {
  require_file("instances", path);
  return load_instances(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Starting-material constrained retrosynthesis planning"};
  app.set_config("--config", "", "TOML/INI file with default flag values");
  app.require_subcommand(1);

  // plan
  auto* plan = app.add_subcommand("plan", "Plan a route from a target to an enforced starting material");
  std::string target_smiles, sm_smiles, corpus_path, inventory_path, out_path, format = "json", dot_path;
  std::size_t budget = 100;
  SearchFlags plan_flags;
  plan->add_option("--target", target_smiles, "Target SMILES")->required();
  plan->add_option("--sm", sm_smiles, "Enforced starting material SMILES")->required();
  plan->add_option("--corpus", corpus_path, "Reaction corpus (JSON lines); bond disconnection if omitted");
  plan->add_option("--inventory", inventory_path, "Purchasable SMILES, optionally gzipped");
  plan->add_option("--budget", budget, "Expansion budget")->capture_default_str();
  plan->add_option("--out", out_path, "Output path (stdout if omitted)");
  plan->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
  plan->add_option("--dot", dot_path, "Also write a DOT rendering here");
  plan_flags.add(*plan);

  // bench
  auto* bench = app.add_subcommand("bench", "Evaluate a benchmark suite");
  std::string instances_path;
  std::vector<std::size_t> budgets{10, 50, 100};
  std::size_t jobs = 1;
  std::string outcomes_path, label = "tango";
  SearchFlags bench_flags;
  bench->add_option("--instances", instances_path, "Benchmark instances (JSON lines)")->required();
  bench->add_option("--corpus", corpus_path, "Reaction corpus; bond disconnection if omitted");
  bench->add_option("--inventory", inventory_path, "Purchasable SMILES, optionally gzipped");
  bench->add_option("--budgets", budgets, "Ascending expansion budgets")->delimiter(',')->capture_default_str();
  bench->add_option("--jobs", jobs, "Instances searched in parallel")->capture_default_str();
  bench->add_option("--out", out_path, "Metrics CSV path (stdout if omitted)");
  bench->add_option("--outcomes", outcomes_path, "Per-instance CSV path");
  bench->add_option("--label", label, "Row label in the CSV")->capture_default_str();
  bench_flags.add(*bench);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Cost monotonicity along ground-truth routes");
  std::string analyze_dir;
  SearchFlags analyze_flags;
  analyze->add_option("--instances", instances_path, "Benchmark instances with routes")->required();
  analyze->add_option("--out", analyze_dir, "Directory for per-route CSVs and summary.csv")->required();
  analyze_flags.add(*analyze);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic benchmark");
  GeneratorConfig gen_cfg;
  std::optional<int> depth;
  std::string gen_dir;
  gen->add_option("--seed", gen_cfg.seed, "Random seed")->capture_default_str();
  gen->add_option("--n", gen_cfg.instances, "Number of instances")->capture_default_str();
  gen->add_option("--depth", depth, "Route depth (sets both bounds)");
  gen->add_option("--min-depth", gen_cfg.min_depth, "Smallest route depth")->capture_default_str();
  gen->add_option("--max-depth", gen_cfg.max_depth, "Largest route depth")->capture_default_str();
  gen->add_option("--branching", gen_cfg.branching, "Building blocks per route reaction")->capture_default_str();
  gen->add_option("--distractors", gen_cfg.distractors, "Off-route reactions per product")->capture_default_str();
  gen->add_option("--out", gen_dir, "Output directory")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Grid over k and c");
  std::vector<double> k_grid{0, 10, 25, 50}, c_grid{0, 0.3, 0.5, 1};
  SearchFlags sweep_flags;
  sweep->add_option("--instances", instances_path, "Benchmark instances (JSON lines)")->required();
  sweep->add_option("--corpus", corpus_path, "Reaction corpus; bond disconnection if omitted");
  sweep->add_option("--inventory", inventory_path, "Purchasable SMILES, optionally gzipped");
  sweep->add_option("--k-grid", k_grid, "k values")->delimiter(',')->capture_default_str();
  sweep->add_option("--c-grid", c_grid, "c values")->delimiter(',')->capture_default_str();
  sweep->add_option("--budget", budget, "Expansion budget")->capture_default_str();
  sweep->add_option("--jobs", jobs, "Instances searched in parallel")->capture_default_str();
  sweep->add_option("--out", out_path, "CSV path (stdout if omitted)");
  sweep_flags.add(*sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*plan) {
      const SearchConfig cfg = plan_flags.config(budget);
      const Molecule target = parse_named("target", target_smiles);
      const Molecule sm = parse_named("sm", sm_smiles);
      const auto policy = load_policy(corpus_path);
      const Inventory inv = load_inventory(inventory_path);
      const SearchResult r = run_search(target, sm, *policy, inv, cfg, plan_flags.value());
      if (format == "dot") {
        write_output(out_path, r.route ? route_to_dot(*r.route) : "digraph route {\n}\n");
      } else {
        write_output(out_path, route_to_json(r, cfg, target, sm));
      }
      if (!dot_path.empty() && r.route) write_output(dot_path, route_to_dot(*r.route));
      std::cerr << (r.solved ? fmt::format("solved: {} reactions, cost {:.4f}, {} expansions\n",
                                           r.route->length(), r.route->total_cost, r.expansions_used)
                             : fmt::format("unsolved after {} expansions\n", r.expansions_used));
      return r.solved ? kExitOk : kExitUnsolved;
    }

    if (*bench) {
      const SearchConfig cfg = bench_flags.config(budgets.empty() ? 1 : budgets.back());
      const auto instances = read_instances(instances_path);
      const auto policy = load_policy(corpus_path);
      const Inventory inv = load_inventory(inventory_path);
      const MetricsReport report =
          evaluate(instances, *policy, inv, cfg, budgets, {jobs, bench_flags.value()});
      const std::vector<ReportRow> rows{{label, cfg.tango.k, cfg.tango.c, &report}};
      write_output(out_path, metrics_csv(rows));
      if (!outcomes_path.empty()) write_output(outcomes_path, outcomes_csv(report));
      std::cerr << summary_table(rows);
      return kExitOk;
    }

    if (*analyze) {
      const SearchConfig cfg = analyze_flags.config(1);
      const auto instances = read_instances(instances_path);
      const RouteCostFn tango_fn = tango_route_cost(cfg.tango, cfg.similarity);
      const RouteCostFn constant_fn = constant_route_cost();
      fs::create_directories(analyze_dir);
      double tango_sum = 0, constant_sum = 0;
      std::size_t used = 0;
      std::string per_route = "instance,cost_function,decreasing_fraction\n";
      for (std::size_t i = 0; i < instances.size(); ++i) {
        if (!instances[i].ground_truth_route || instances[i].ground_truth_route->size() < 2) {
          std::cerr << "warning: instance " << i << " has no usable route, skipped\n";
          continue;
        }
        const auto t = monotonicity_analysis(instances[i], tango_fn);
        const auto c = monotonicity_analysis(instances[i], constant_fn);
        write_output((fs::path(analyze_dir) / fmt::format("route_{}_tango.csv", i)).string(), series_csv(t));
        write_output((fs::path(analyze_dir) / fmt::format("route_{}_constant.csv", i)).string(), series_csv(c));
        per_route += fmt::format("{},tango,{:.6f}\n{},constant,{:.6f}\n", i, t.decreasing_fraction, i,
                                 c.decreasing_fraction);
        tango_sum += t.decreasing_fraction;
        constant_sum += c.decreasing_fraction;
        ++used;
      }
      const double n = used ? static_cast<double>(used) : 1.0;
      const std::string summary = fmt::format(
          "cost_function,routes,mean_decreasing_fraction\ntango,{},{:.6f}\nconstant,{},{:.6f}\n", used,
          tango_sum / n, used, constant_sum / n);
      write_output((fs::path(analyze_dir) / "routes.csv").string(), per_route);
      write_output((fs::path(analyze_dir) / "summary.csv").string(), summary);
      std::cout << summary;
      return kExitOk;
    }

    if (*gen) {
      if (depth) gen_cfg.min_depth = gen_cfg.max_depth = *depth;
      const GeneratedBenchmark b = generate_benchmark(gen_cfg);
      fs::create_directories(gen_dir);
      const fs::path dir(gen_dir);
      b.corpus.save_jsonl(dir / "corpus.jsonl");
      save_instances(dir / "instances.jsonl", b.instances);
      std::string inv;
      for (const auto& s : b.inventory) inv += s + "\n";
      write_output((dir / "inventory.smi").string(), inv);
      std::cerr << fmt::format("wrote {} instances, {} reactions to {}\n", b.instances.size(), b.corpus.size(),
                               gen_dir);
      return kExitOk;
    }

    if (*sweep) {
      const SearchConfig cfg = sweep_flags.config(budget);
      const auto instances = read_instances(instances_path);
      const auto policy = load_policy(corpus_path);
      const Inventory inv = load_inventory(inventory_path);
      const auto cells =
          hyperparameter_sweep(instances, *policy, inv, k_grid, c_grid, budget, cfg, {jobs, sweep_flags.value()});
      write_output(out_path, sweep_csv(cells));
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
