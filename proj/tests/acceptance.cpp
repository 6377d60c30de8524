// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "tango/bench.hpp"
#include "tango/cost.hpp"
#include "tango/simil.hpp"

namespace {

using namespace tango;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Inventory inventory_of(const GeneratedBenchmark& b) {
  Inventory inv;
  for (const auto& s : b.inventory) inv.insert_smiles(s);
  return inv;
}

Verdict incremental_values() {
  const auto start = Clock::now();
  std::size_t steps = 0, failures = 0;
  std::string first;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::size_t n = 0;
    const auto mismatch = oracle::random_expansion_mismatch(1000 + seed, 188, 1e-9, &n);
    steps += n;
    if (mismatch) {
      if (!failures) first = *mismatch;
      ++failures;
    }
  }
  const double t = seconds_since(start);
  return {failures == 0 && t < 60.0,
          fmt::format("200 sequences, {} expansions checked, {} mismatches{}, {:.1f} s (limit 60 s)", steps, failures,
                      failures ? " (" + first + ")" : "", t)};
}

Verdict optimality() {
  GeneratorConfig gc;
  gc.seed = 2024;
  gc.instances = 50;
  gc.min_depth = 1;
  gc.max_depth = 4;
  const auto bench = generate_benchmark(gc);
  const Inventory inv = inventory_of(bench);
  SearchConfig cfg;
  cfg.tango.k = 0.0;
  cfg.expansion_budget = 1000000;
  std::size_t exact = 0, solved = 0;
  std::string first;
  for (std::size_t i = 0; i < bench.instances.size(); ++i) {
    const auto& inst = bench.instances[i];
    const double brute = oracle::min_route_cost(bench.corpus, inv, inst.target, inst.sm, true);
    bool ok = true;
    for (auto mode : {Termination::exhaust, Termination::proven_optimal}) {
      cfg.termination = mode;
      const auto r = run_search(inst.target, inst.sm, bench.corpus, inv, cfg, std::make_shared<ConstantValue>(0.0));
      solved += r.solved ? 1 : 0;
      if (!r.solved || r.route->total_cost != brute) {
        ok = false;
        if (first.empty()) {
          first = fmt::format("instance {}: {} vs {}", i, r.solved ? r.route->total_cost : -1.0, brute);
        }
      }
    }
    exact += ok ? 1 : 0;
  }
  return {exact == bench.instances.size(),
          fmt::format("{}/{} instances match brute force exactly under both exhaustive and proven-optimal stops{}",
                      exact, bench.instances.size(), first.empty() ? "" : " (" + first + ")")};
}

double median_expansions(const MetricsReport& r, std::size_t budget) {
  std::vector<double> v;
  for (const auto& o : r.outcomes) v.push_back(static_cast<double>(o.solve_expansions.value_or(budget)));
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

GeneratedBenchmark guidance_suite() {
  GeneratorConfig gc;
  gc.seed = 7;
  gc.instances = 100;
  gc.min_depth = 4;
  gc.max_depth = 6;
  gc.distractors = 2;
  return generate_benchmark(gc);
}

Verdict guidance(const GeneratedBenchmark& bench) {
  const auto start = Clock::now();
  const Inventory inv = inventory_of(bench);
  constexpr std::size_t kBudget = 100;
  SearchConfig tango_cfg, plain_cfg;
  tango_cfg.tango.k = 25.0;
  plain_cfg.tango.k = 0.0;
  const auto guided = evaluate(bench.instances, bench.corpus, inv, tango_cfg, {kBudget});
  const auto plain = evaluate(bench.instances, bench.corpus, inv, plain_cfg, {kBudget});
  const double rg = guided.solve_rate_at.at(kBudget), rp = plain.solve_rate_at.at(kBudget);
  const double mg = median_expansions(guided, kBudget), mp = median_expansions(plain, kBudget);
  const double t = seconds_since(start);
  return {rg - rp >= 0.10 && mg < mp && t < 600.0,
          fmt::format("solve rate k=25 {:.1f}% vs k=0 {:.1f}% (need +10 pp); median expansions {} vs {}; "
                      "{:.1f} s (limit 600 s)",
                      100 * rg, 100 * rp, mg, mp, t)};
}

Verdict monotonicity(const GeneratedBenchmark& bench) {
  const auto tango_fn = tango_route_cost({25.0, 0.3});
  const auto constant_fn = constant_route_cost(0.0);
  double t = 0, c = 0;
  for (const auto& inst : bench.instances) {
    t += monotonicity_analysis(inst, tango_fn).decreasing_fraction;
    c += monotonicity_analysis(inst, constant_fn).decreasing_fraction;
  }
  const double n = static_cast<double>(bench.instances.size());
  return {t / n >= 0.8 && c == 0.0,
          fmt::format("mean decreasing fraction TANGO {:.3f} (need >= 0.8), constant {:.3f} (need 0) over {} routes",
                      t / n, c / n, bench.instances.size())};
}

Verdict similarity_axioms() {
  std::mt19937_64 rng(77);
  std::size_t violations = 0, small = 0;
  std::string first;
  auto flag = [&](const std::string& what) {
    if (!violations) first = what;
    ++violations;
  };
  for (int i = 0; i < 1000; ++i) {
    const int size_a = 3 + static_cast<int>(rng() % 18), size_b = 3 + static_cast<int>(rng() % 18);
    const Molecule a = oracle::random_molecule(rng, size_a);
    const Molecule b = oracle::random_molecule(rng, size_b);
    const auto fa = morgan_fingerprint(a), fb = morgan_fingerprint(b);
    const double tab = tanimoto(fa, fb), tba = tanimoto(fb, fa);
    const double mab = fms(a, b), mba = fms(b, a);
    const std::string pair = a.canonical_key() + " / " + b.canonical_key();
    if (tab != tba) flag("Tanimoto asymmetric: " + pair);
    if (mab != mba) flag("FMS asymmetric: " + pair);
    if (tab < 0 || tab > 1 || mab < 0 || mab > 1) flag("out of [0,1]: " + pair);
    if (tanimoto(fa, fa) != 1.0 || fms(a, a) != 1.0) flag("self similarity: " + a.canonical_key());
    if (a.atom_count() <= 8 && b.atom_count() <= 8) {
      ++small;
      if (mcs_atoms(a, b) > oracle::brute_force_mcs(a, b)) flag("MCS above brute force: " + pair);
    }
  }
  return {violations == 0 && small > 0,
          fmt::format("1000 pairs, {} with <= 8 atoms checked against brute-force MCS, {} violations{}", small,
                      violations, violations ? " (" + first + ")" : "")};
}

Verdict algorithm_arithmetic() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> retro(0.0, 50.0), kdist(0.0, 100.0), cdist(0.0, 1.0);
  std::size_t violations = 0;
  std::string first;
  auto flag = [&](const std::string& what) {
    if (!violations) first = what;
    ++violations;
  };
  // Reward 0: nothing in common with the starting material.
  const Molecule he = parse_smiles("[He]");
  const StartingMaterialSet ethanol({parse_smiles("CCO")});
  if (tango_reward(he, ethanol, {25.0, 0.3}) != 0.0) flag("reward of [He] vs CCO is not 0");
  if (tango_node_cost(he, ethanol, {25.0, 0.3}, 0.0) != 25.0) flag("reward 0, k 25, retro 0 does not give 25");
  for (int i = 0; i < 1000; ++i) {
    const Molecule node = oracle::random_molecule(rng, 14);
    const TangoParams p{kdist(rng), cdist(rng)};
    const double rc = retro(rng);
    std::vector<Molecule> set{oracle::random_molecule(rng, 14)};
    for (int k = static_cast<int>(rng() % 3); k > 0; --k) set.push_back(oracle::random_molecule(rng, 14));
    const Molecule extra = oracle::random_molecule(rng, 14);
    const double before = tango_node_cost(node, StartingMaterialSet(set), p, rc);
    set.push_back(extra);
    const double after = tango_node_cost(node, StartingMaterialSet(set), p, rc);
    if (after > before) flag(fmt::format("trial {}: cost rose {} -> {}", i, before, after));
    set.push_back(node);
    if (tango_node_cost(node, StartingMaterialSet(set), p, rc) != rc) flag(fmt::format("trial {}: reward 1 cost != retro", i));
  }
  return {violations == 0, fmt::format("end points plus 1000 randomized trials, {} violations{}", violations,
                                       violations ? " (" + first + ")" : "")};
}

Verdict parser_round_trip() {
  std::mt19937_64 rng(500);
  std::size_t failures = 0, rings = 0, charges = 0, multi = 0, percent = 0;
  std::string first;
  auto flag = [&](const std::string& what) {
    if (!failures) first = what;
    ++failures;
  };
  for (int i = 0; i < 500; ++i) {
    const Molecule m = oracle::random_molecule(rng, 26, 1 + i % 3);
    const std::string a = oracle::scrambled_smiles(m, rng);
    const std::string b = oracle::scrambled_smiles(m, rng);
    rings += m.bond_count() + m.component_count() > m.atom_count() ? 1 : 0;
    charges += std::any_of(m.atoms().begin(), m.atoms().end(), [](const Atom& x) { return x.formal_charge != 0; });
    multi += m.component_count() > 1 ? 1 : 0;
    percent += a.find('%') != std::string::npos ? 1 : 0;
    try {
      const Molecule pa = parse_smiles(a), pb = parse_smiles(b);
      if (!oracle::isomorphic(pa, m)) flag("parse not isomorphic: " + a);
      if (pa.canonical_key() != pb.canonical_key()) flag("unstable canonical form: " + a + " vs " + b);
      const Molecule back = parse_smiles(pa.canonical_key());
      if (!oracle::isomorphic(back, m)) flag("canonical SMILES not isomorphic: " + pa.canonical_key());
      if (back.canonical_key() != pa.canonical_key()) flag("canonical form not idempotent: " + pa.canonical_key());
    } catch (const std::exception& e) {
      flag(a + ": " + e.what());
    }
  }
  return {failures == 0 && rings && charges && multi && percent,
          fmt::format("500 molecules ({} ringed, {} charged, {} multi-fragment, {} with %nn closures), {} failures{}",
                      rings, charges, multi, percent, failures, failures ? " (" + first + ")" : "")};
}

Verdict inventory_scale() {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / fmt::format("tango_inventory_{}.smi", ::getpid());
  std::mt19937_64 rng(1);
  static const char* kPieces[] = {"C", "N", "O", "S", "C(=O)", "C1CC1", "c1ccccc1", "C(F)", "CC"};
  std::vector<std::string> lines;
  lines.reserve(1000000);
  {
    std::ofstream out(path);
    for (int i = 0; i < 1000000; ++i) {
      std::string s = "C";
      for (int k = 4 + static_cast<int>(rng() % 6); k > 0; --k) s += kPieces[rng() % 9];
      out << s << '\n';
      lines.push_back(std::move(s));
    }
  }
  const auto start = Clock::now();
  const Inventory inv = Inventory::load(path);
  const double load = seconds_since(start);
  fs::remove(path);

  std::vector<std::string> queries;
  for (int i = 0; i < 50000; ++i) {
    queries.push_back(parse_smiles(lines[rng() % lines.size()]).canonical_key());
    queries.push_back(fmt::format("CC{}N", std::string(1 + i % 20, 'O')));
  }
  std::size_t hits = 0;
  const auto qstart = Clock::now();
  constexpr int kRounds = 20;
  for (int r = 0; r < kRounds; ++r) {
    for (const auto& q : queries) hits += inv.contains(std::string_view(q)) ? 1 : 0;
  }
  const double per_query = seconds_since(qstart) / static_cast<double>(kRounds * queries.size()) * 1e6;
  return {load < 30.0 && per_query < 1.0 && hits >= kRounds * 50000u,
          fmt::format("1,000,000 lines ({} unique, {} skipped) loaded in {:.2f} s (limit 30 s); {:.3f} us per query "
                      "(limit 1 us)",
                      inv.size(), inv.skipped_lines(), load, per_query)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](const char* name, const std::function<Verdict()>& check) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s  %-32s %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  };
  const GeneratedBenchmark suite = guidance_suite();
  report("incremental-values-match-batch", incremental_values);
  report("optimal-route-zero-heuristic", optimality);
  report("tango-guidance-efficacy", [&] { return guidance(suite); });
  report("cost-monotonicity", [&] { return monotonicity(suite); });
  report("similarity-axioms", similarity_axioms);
  report("node-cost-arithmetic", algorithm_arithmetic);
  report("parser-round-trip", parser_round_trip);
  report("inventory-scale", inventory_scale);
  std::printf("%d of 8 criteria failed\n", failed);
  return failed;
}
