#include <chrono>
#include <limits>
#include <stdexcept>

#include "tango/search.hpp"

namespace tango {

void SearchConfig::validate() const {
  if (expansion_budget < 1) throw std::invalid_argument("expansion budget must be at least 1");
  if (top_n < 1) throw std::invalid_argument("top_n must be at least 1");
  tango.validate();
}

std::optional<std::size_t> select_frontier(const SearchGraph& g) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < g.molecule_count(); ++i) {
    const MoleculeNode& m = g.molecule(i);
    if (m.state != NodeState::frontier) continue;
    if (!best || m.v_t < g.molecule(*best).v_t) best = i;
  }
  return best;
}

std::size_t expand(SearchGraph& g, std::size_t node, const ExpansionPolicy& policy,
                   const Inventory& inventory, const CostFunction& initial_cost,
                   std::size_t top_n) {
  if (g.molecule(node).state != NodeState::frontier) {
    throw std::logic_error("only frontier nodes can be expanded");
  }
  std::vector<ExpansionCandidate> candidates;
  try {
    candidates = expand_one_step(policy, g.molecule(node).mol, top_n);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    g.set_state(node, NodeState::dead);
    return 0;
  }

  const auto anc = g.ancestors(node);
  std::size_t created = 0;
  bool any = false;
  for (auto& cand : candidates) {
    std::vector<std::size_t> children;
    for (const auto& precursor : cand.precursors) {
      for (auto& frag : fragments(precursor)) {
        if (auto id = g.find(frag.canonical_key())) {
          children.push_back(*id);
          continue;
        }
        const bool buyable = inventory.contains(frag) || g.is_enforced(frag);
        const double rn = buyable ? 0.0 : initial_cost(frag);
        auto [id, inserted] = g.add_molecule(std::move(frag),
                                             buyable ? NodeState::purchasable : NodeState::frontier, rn);
        created += inserted ? 1 : 0;
        children.push_back(id);
      }
    }
    if (children.empty()) continue;
    g.add_reaction(node, std::move(children), cand.probability, &anc);
    any = true;
  }
  g.set_state(node, any ? NodeState::expanded : NodeState::dead);
  return created;
}

void update(SearchGraph& g, std::size_t from) { g.update(from); }

std::optional<Route> extract_route(const SearchGraph& g, bool constrained) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = g.molecule_count();
  std::vector<double> cost(n, kInf), cost_sm(n, kInf);
  std::vector<std::size_t> best(n, 0), best_sm(n, 0), sm_child(n, 0);

  // Children before parents: repeat until stable, which on a DAG converges in
  // at most depth sweeps. Visiting in reverse creation order makes that fast.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = n; i-- > 0;) {
      const MoleculeNode& m = g.molecule(i);
      double c = kInf, c_sm = kInf;
      std::size_t b = 0, b_sm = 0, j_sm = 0;
      if (m.state == NodeState::purchasable) {
        c = 0.0;
        if (m.is_enforced_sm) c_sm = 0.0;
      } else if (m.state == NodeState::expanded) {
        for (std::size_t r : m.child_reactions) {
          const ReactionNode& rx = g.reaction(r);
          if (rx.cyclic) continue;
          double total = rx.cost;
          for (std::size_t ch : rx.children) total += cost[ch];
          if (total < c) {
            c = total;
            b = r;
          }
          if (!constrained) continue;
          for (std::size_t j = 0; j < rx.children.size(); ++j) {
            if (cost_sm[rx.children[j]] == kInf) continue;
            double t = rx.cost;
            for (std::size_t k = 0; k < rx.children.size(); ++k) {
              t += k == j ? cost_sm[rx.children[k]] : cost[rx.children[k]];
            }
            if (t < c_sm) {
              c_sm = t;
              b_sm = r;
              j_sm = j;
            }
          }
        }
      }
      if (c != cost[i] || c_sm != cost_sm[i]) changed = true;
      cost[i] = c;
      cost_sm[i] = c_sm;
      best[i] = b;
      best_sm[i] = b_sm;
      sm_child[i] = j_sm;
    }
  }

  const std::size_t root = g.root();
  const double total = constrained ? cost_sm[root] : cost[root];
  if (total == kInf) return std::nullopt;

  Route route;
  route.total_cost = total;
  auto build = [&](auto&& self, std::size_t m, bool need_sm) -> std::size_t {
    const MoleculeNode& node = g.molecule(m);
    const std::size_t idx = route.nodes.size();
    route.nodes.push_back({node.mol.canonical_key(), node.state == NodeState::purchasable,
                           node.is_enforced_sm});
    if (node.state == NodeState::purchasable) return idx;
    const std::size_t r = need_sm ? best_sm[m] : best[m];
    const ReactionNode& rx = g.reaction(r);
    const std::size_t step = route.reactions.size();
    route.reactions.push_back({idx, {}, rx.cost, rx.probability});
    for (std::size_t k = 0; k < rx.children.size(); ++k) {
      const std::size_t child = self(self, rx.children[k], need_sm && k == sm_child[m]);
      route.reactions[step].precursors.push_back(child);
    }
    return idx;
  };
  build(build, root, constrained);
  return route;
}

SearchResult run_search(const Molecule& target, const Molecule& sm, const ExpansionPolicy& policy,
                        const Inventory& inventory, const SearchConfig& config,
                        std::shared_ptr<const ValueOracle> value) {
  return run_search(target, sm, policy, inventory, config, std::move(value), nullptr);
}

SearchResult run_search(const Molecule& target, const Molecule& sm, const ExpansionPolicy& policy,
                        const Inventory& inventory, const SearchConfig& config,
                        std::shared_ptr<const ValueOracle> value,
                        std::unique_ptr<SearchGraph>* graph_out) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  if (!value) value = std::make_shared<ConstantValue>();

  std::unique_ptr<TangoCost> tango;
  CostFunction initial_cost;
  if (config.constrained) {
    tango = std::make_unique<TangoCost>(StartingMaterialSet({sm}, config.similarity), config.tango,
                                        value);
    initial_cost = [&](const Molecule& m) { return tango->node_cost(m); };
  } else {
    initial_cost = [&](const Molecule& m) { return value->value(m); };
  }

  std::vector<Molecule> enforced;
  if (config.constrained) enforced.push_back(sm);
  auto graph = std::make_unique<SearchGraph>(target, std::move(enforced), initial_cost(target));
  SearchGraph& g = *graph;
  if (!config.constrained && inventory.contains(target)) {
    g.set_state(g.root(), NodeState::purchasable);
    g.update(g.root());
  }

  auto goal = [&] {
    const MoleculeNode& root = g.molecule(g.root());
    return config.constrained ? root.solved_with_sm : root.solved;
  };

  SearchResult result;
  std::size_t expansions = 0;
  while (true) {
    if (goal()) {
      if (!result.first_solution_expansions) result.first_solution_expansions = expansions;
      if (config.termination == Termination::first_solution) break;
      if (config.termination == Termination::proven_optimal) {
        const auto route = extract_route(g, config.constrained);
        const auto next = select_frontier(g);
        if (!next || route->total_cost <= g.molecule(*next).v_t) break;
      }
    }
    if (expansions >= config.expansion_budget) break;
    const auto next = select_frontier(g);
    if (!next) break;
    expand(g, *next, policy, inventory, initial_cost, config.top_n);
    ++expansions;
    update(g, *next);
  }

  result.expansions_used = expansions;
  result.route = extract_route(g, config.constrained);
  result.solved = result.route.has_value();
  if (result.solved && !result.first_solution_expansions) {
    result.first_solution_expansions = expansions;
  }
  result.molecule_nodes = g.molecule_count();
  result.reaction_nodes = g.reaction_count();
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (graph_out) *graph_out = std::move(graph);
  return result;
}

}  // namespace tango
