#include <memory>
#include <stdexcept>

#include <fmt/format.h>

#include "tango/bench.hpp"

namespace tango {

RouteCostFn tango_route_cost(const TangoParams& params, const SimilarityConfig& similarity) {
  params.validate();
  return [params, similarity](const Molecule& node, const Molecule& sm) {
    return tango_node_cost(node, StartingMaterialSet({sm}, similarity), params, 0.0);
  };
}

RouteCostFn constant_route_cost(double value) {
  return [value](const Molecule&, const Molecule&) { return value; };
}

double decreasing_fraction(const std::vector<double>& costs) {
  if (costs.size() < 2) throw std::invalid_argument("need at least two costs");
  std::size_t down = 0;
  for (std::size_t i = 0; i + 1 < costs.size(); ++i) down += costs[i] > costs[i + 1] ? 1 : 0;
  return static_cast<double>(down) / static_cast<double>(costs.size() - 1);
}

MonotonicitySeries monotonicity_analysis(const BenchmarkInstance& instance, const RouteCostFn& cost) {
  if (!instance.ground_truth_route) throw std::invalid_argument("instance has no ground-truth route");
  const auto& route = *instance.ground_truth_route;
  if (route.size() < 2) throw std::invalid_argument("ground-truth route needs at least two molecules");
  MonotonicitySeries s;
  std::vector<double> costs;
  for (std::size_t i = 0; i < route.size(); ++i) {
    costs.push_back(cost(route[i], instance.sm));
    s.points.push_back({static_cast<int>(route.size() - 1 - i), costs.back()});
  }
  s.decreasing_fraction = decreasing_fraction(costs);
  return s;
}

std::string series_csv(const MonotonicitySeries& series) {
  std::string out = "distance,cost\n";
  for (const auto& p : series.points) out += fmt::format("{},{:.6f}\n", p.distance, p.cost);
  return out;
}

}  // namespace tango
