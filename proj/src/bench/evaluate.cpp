#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "tango/bench.hpp"

namespace tango {

std::size_t MetricsReport::solved_count() const {
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.solved; }));
}

std::size_t MetricsReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.error.has_value(); }));
}

namespace {

InstanceOutcome run_one(const BenchmarkInstance& inst, const ExpansionPolicy& policy,
                        const Inventory& inventory, const SearchConfig& config,
                        const std::shared_ptr<const ValueOracle>& value) {
  InstanceOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    const SearchResult r = run_search(inst.target, inst.sm, policy, inventory, config, value);
    out.solved = r.solved;
    out.expansions_used = r.expansions_used;
    if (r.solved) {
      out.solve_expansions = r.first_solution_expansions;
      out.route_length = r.route->length();
    }
  } catch (const std::exception& e) {
    out = {};
    out.error = e.what();
  }
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

MetricsReport evaluate(const std::vector<BenchmarkInstance>& instances, const ExpansionPolicy& policy,
                       const Inventory& inventory, const SearchConfig& config,
                       const std::vector<std::size_t>& budgets, const EvalOptions& options) {
  if (budgets.empty()) throw std::invalid_argument("at least one budget is required");
  for (std::size_t i = 1; i < budgets.size(); ++i) {
    if (budgets[i] <= budgets[i - 1]) throw std::invalid_argument("budgets must be strictly ascending");
  }
  SearchConfig cfg = config;
  cfg.expansion_budget = budgets.back();
  cfg.validate();

  MetricsReport report;
  report.budgets = budgets;
  report.outcomes.resize(instances.size());
  if (instances.empty()) return report;

  const auto start = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) {
      report.outcomes[i] = run_one(instances[i], policy, inventory, cfg, options.value);
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, instances.size());
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  report.wall_clock_total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const double n = static_cast<double>(instances.size());
  for (std::size_t b : budgets) {
    const auto hits = std::count_if(report.outcomes.begin(), report.outcomes.end(), [&](const auto& o) {
      return o.solve_expansions && *o.solve_expansions <= b;
    });
    report.solve_rate_at[b] = static_cast<double>(hits) / n;
  }
  double expansions = 0, length = 0, wall = 0;
  std::size_t solved = 0;
  for (const auto& o : report.outcomes) {
    expansions += static_cast<double>(o.solve_expansions ? *o.solve_expansions : budgets.back());
    wall += o.wall_time;
    if (o.solved) {
      length += static_cast<double>(o.route_length);
      ++solved;
    }
  }
  report.avg_expansions = expansions / n;
  report.avg_route_length = solved ? length / static_cast<double>(solved) : 0.0;
  report.wall_clock_mean = wall / n;
  return report;
}

std::vector<std::optional<double>> common_route_lengths(const std::vector<const MetricsReport*>& reports) {
  std::vector<std::optional<double>> out(reports.size());
  if (reports.empty()) return out;
  const std::size_t n = reports.front()->instance_count();
  for (const auto* r : reports) {
    if (r->instance_count() != n) throw std::invalid_argument("reports cover different instance sets");
  }
  std::vector<double> sum(reports.size(), 0.0);
  std::size_t common = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool all = std::all_of(reports.begin(), reports.end(),
                                 [&](const MetricsReport* r) { return r->outcomes[i].solved; });
    if (!all) continue;
    ++common;
    for (std::size_t j = 0; j < reports.size(); ++j) {
      sum[j] += static_cast<double>(reports[j]->outcomes[i].route_length);
    }
  }
  if (common == 0) return out;
  for (std::size_t j = 0; j < reports.size(); ++j) out[j] = sum[j] / static_cast<double>(common);
  return out;
}

std::string metrics_csv(const std::vector<ReportRow>& rows) {
  std::string out = "label,k,c,instances,solved,errors";
  const std::vector<std::size_t> budgets = rows.empty() ? std::vector<std::size_t>{} : rows.front().report->budgets;
  for (std::size_t b : budgets) out += fmt::format(",solve_rate@{}", b);
  out += ",avg_expansions,avg_route_length,wall_clock_total,wall_clock_mean\n";
  for (const auto& row : rows) {
    const MetricsReport& r = *row.report;
    if (r.instance_count() == 0) continue;
    out += fmt::format("{},{},{},{},{},{}", row.label, row.k, row.c, r.instance_count(), r.solved_count(),
                       r.error_count());
    for (std::size_t b : budgets) {
      auto it = r.solve_rate_at.find(b);
      out += it == r.solve_rate_at.end() ? std::string(",") : fmt::format(",{:.4f}", it->second);
    }
    out += fmt::format(",{:.4f},{:.4f},{:.3f},{:.4f}\n", r.avg_expansions, r.avg_route_length,
                       r.wall_clock_total, r.wall_clock_mean);
  }
  return out;
}

std::string outcomes_csv(const MetricsReport& report) {
  std::string out = "instance,solved,solve_expansions,expansions_used,route_length,wall_time,error\n";
  for (std::size_t i = 0; i < report.outcomes.size(); ++i) {
    const auto& o = report.outcomes[i];
    std::string err = o.error.value_or("");
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += fmt::format("{},{},{},{},{},{:.4f},{}\n", i, o.solved ? 1 : 0,
                       o.solve_expansions ? std::to_string(*o.solve_expansions) : std::string(),
                       o.expansions_used, o.route_length, o.wall_time, err);
  }
  return out;
}

std::string summary_table(const std::vector<ReportRow>& rows) {
  std::string out = fmt::format("{:<12} {:>6} {:>6} {:>9}", "config", "k", "c", "instances");
  const std::vector<std::size_t> budgets = rows.empty() ? std::vector<std::size_t>{} : rows.front().report->budgets;
  for (std::size_t b : budgets) out += fmt::format(" {:>9}", fmt::format("solve@{}", b));
  out += fmt::format(" {:>8} {:>8} {:>9}\n", "N", "length", "wall[s]");
  for (const auto& row : rows) {
    const MetricsReport& r = *row.report;
    out += fmt::format("{:<12} {:>6} {:>6} {:>9}", row.label, row.k, row.c, r.instance_count());
    for (std::size_t b : budgets) {
      auto it = r.solve_rate_at.find(b);
      out += fmt::format(" {:>8.1f}%", it == r.solve_rate_at.end() ? 0.0 : 100.0 * it->second);
    }
    out += fmt::format(" {:>8.2f} {:>8.2f} {:>9.2f}\n", r.avg_expansions, r.avg_route_length, r.wall_clock_total);
  }
  return out;
}

std::vector<SweepCell> hyperparameter_sweep(const std::vector<BenchmarkInstance>& instances,
                                            const ExpansionPolicy& policy, const Inventory& inventory,
                                            const std::vector<double>& k_grid,
                                            const std::vector<double>& c_grid, std::size_t budget,
                                            const SearchConfig& base, const EvalOptions& options) {
  if (k_grid.empty() || c_grid.empty()) throw std::invalid_argument("sweep grids must be non-empty");
  std::vector<SweepCell> cells;
  for (double k : k_grid) {
    for (double c : c_grid) {
      SearchConfig cfg = base;
      cfg.tango.k = k;
      cfg.tango.c = c;
      cells.push_back({k, c, evaluate(instances, policy, inventory, cfg, {budget}, options)});
    }
  }
  return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string out = "k,c,instances,solved,solve_rate,avg_expansions,avg_route_length,wall_clock_total\n";
  for (const auto& cell : cells) {
    const MetricsReport& r = cell.report;
    const double rate = r.solve_rate_at.empty() ? 0.0 : r.solve_rate_at.rbegin()->second;
    out += fmt::format("{},{},{},{},{:.4f},{:.4f},{:.4f},{:.3f}\n", cell.k, cell.c, r.instance_count(),
                       r.solved_count(), rate, r.avg_expansions, r.avg_route_length, r.wall_clock_total);
  }
  return out;
}

}  // namespace tango
