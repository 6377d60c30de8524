#ifndef TANGO_BENCH_HPP
#define TANGO_BENCH_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tango/inventory.hpp"
#include "tango/policy.hpp"
#include "tango/search.hpp"

namespace tango {

struct InstanceOutcome {
  bool solved = false;
  // Expansions spent when the constrained solution first appeared.
  std::optional<std::size_t> solve_expansions;
  std::size_t expansions_used = 0;
  std::size_t route_length = 0;
  double wall_time = 0.0;
  // Set when the search threw; such instances count as unsolved.
  std::optional<std::string> error;
};

struct MetricsReport {
  std::vector<std::size_t> budgets;
  std::map<std::size_t, double> solve_rate_at;
  // Mean expansions to solve, unsolved instances counted at the largest budget.
  double avg_expansions = 0.0;
  // Mean route length over the instances solved in this run.
  double avg_route_length = 0.0;
  double wall_clock_total = 0.0;
  double wall_clock_mean = 0.0;
  std::vector<InstanceOutcome> outcomes;

  std::size_t instance_count() const { return outcomes.size(); }
  std::size_t solved_count() const;
  std::size_t error_count() const;
};

struct EvalOptions {
  std::size_t jobs = 1;
  std::shared_ptr<const ValueOracle> value;
};

/// Runs each instance once at the largest budget and derives the solve rate
/// at every budget from the expansion count at first solution. Budgets must
/// be non-empty and strictly ascending. Outcomes are ordered by instance.
MetricsReport evaluate(const std::vector<BenchmarkInstance>& instances, const ExpansionPolicy& policy,
                       const Inventory& inventory, const SearchConfig& config,
                       const std::vector<std::size_t>& budgets, const EvalOptions& options = {});

// Mean route length per report over instances every report solved; nullopt
// entries when that set is empty. All reports must cover the same instances.
std::vector<std::optional<double>> common_route_lengths(const std::vector<const MetricsReport*>& reports);

struct ReportRow {
  std::string label;
  double k = 0.0;
  double c = 0.0;
  const MetricsReport* report = nullptr;
};

// Header plus one row per report with instances. Budgets come from the first row.
std::string metrics_csv(const std::vector<ReportRow>& rows);
// Per-instance outcomes.
std::string outcomes_csv(const MetricsReport& report);
std::string summary_table(const std::vector<ReportRow>& rows);

struct MonotonicitySeries {
  struct Point {
    int distance = 0;
    double cost = 0.0;
  };
  std::vector<Point> points;
  double decreasing_fraction = 0.0;
};

// Cost of a route molecule with respect to the instance's starting material.
using RouteCostFn = std::function<double(const Molecule& node, const Molecule& sm)>;

RouteCostFn tango_route_cost(const TangoParams& params, const SimilarityConfig& similarity = {});
RouteCostFn constant_route_cost(double value = 0.0);

/// Evaluates `cost` along the ground-truth route m_r..m_s. Throws
/// std::invalid_argument when the route is missing or has fewer than 2 molecules.
MonotonicitySeries monotonicity_analysis(const BenchmarkInstance& instance, const RouteCostFn& cost);
double decreasing_fraction(const std::vector<double>& costs);
std::string series_csv(const MonotonicitySeries& series);

struct SweepCell {
  double k = 0.0;
  double c = 0.0;
  MetricsReport report;
};

// One evaluate run per (k, c) pair, k-major. Throws on empty grids.
std::vector<SweepCell> hyperparameter_sweep(const std::vector<BenchmarkInstance>& instances,
                                            const ExpansionPolicy& policy, const Inventory& inventory,
                                            const std::vector<double>& k_grid,
                                            const std::vector<double>& c_grid, std::size_t budget,
                                            const SearchConfig& base = {}, const EvalOptions& options = {});
std::string sweep_csv(const std::vector<SweepCell>& cells);

}  // namespace tango

#endif  // TANGO_BENCH_HPP
