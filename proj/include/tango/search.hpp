#ifndef TANGO_SEARCH_HPP
#define TANGO_SEARCH_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tango/cost.hpp"
#include "tango/inventory.hpp"
#include "tango/molgraph.hpp"
#include "tango/policy.hpp"

namespace tango {

// Reaction number of an unsolvable molecule. Finite so that sums stay ordered.
inline constexpr double kDeadCost = 1e15;
inline constexpr double kMinReactionCost = 0.001;
inline constexpr double kMaxReactionCost = 10.0;

// -ln(p) clamped to [kMinReactionCost, kMaxReactionCost].
double reaction_cost(double probability);

enum class NodeState { frontier, expanded, purchasable, dead };

struct MoleculeNode {
  Molecule mol;
  NodeState state = NodeState::frontier;
  // Initial reaction number assigned at creation (V_m, or the TANGO cost).
  double initial_rn = 0.0;
  double rn = 0.0;
  double v_t = 0.0;
  bool is_enforced_sm = false;
  // Some route below this node has only purchasable leaves.
  bool solved = false;
  // ... and additionally has an enforced starting material among them.
  bool solved_with_sm = false;
  std::vector<std::size_t> parent_reactions;
  std::vector<std::size_t> child_reactions;
};

struct ReactionNode {
  std::size_t parent = 0;
  std::vector<std::size_t> children;
  double probability = 1.0;
  double cost = 0.0;
  double rn = 0.0;
  double v_t = 0.0;
  // A precursor is an ancestor of the parent; rn is pinned at kDeadCost and
  // the reaction never takes part in value propagation or solutions.
  bool cyclic = false;
};

/// Bipartite AND-OR graph of molecule (OR) and reaction (AND) nodes.
/// Molecules are deduplicated by canonical SMILES.
class SearchGraph {
 public:
  // The root is purchasable only when it is itself an enforced starting material.
  SearchGraph(Molecule target, std::vector<Molecule> enforced_sms, double root_rn = 0.0);

  std::size_t root() const { return 0; }
  std::size_t molecule_count() const { return molecules_.size(); }
  std::size_t reaction_count() const { return reactions_.size(); }
  const MoleculeNode& molecule(std::size_t id) const { return molecules_[id]; }
  const ReactionNode& reaction(std::size_t id) const { return reactions_[id]; }
  std::optional<std::size_t> find(const std::string& canonical_key) const;
  bool is_enforced(const Molecule& mol) const;

  // Existing id if the molecule is already present, otherwise a new node.
  // Returns {id, inserted}.
  std::pair<std::size_t, bool> add_molecule(Molecule mol, NodeState state, double initial_rn);
  // Children are deduplicated. The reaction is cyclic when a child is an
  // ancestor of `parent`; pass `parent_ancestors` to reuse a precomputed set.
  std::size_t add_reaction(std::size_t parent, std::vector<std::size_t> children, double probability,
                           const std::vector<bool>* parent_ancestors = nullptr);
  void set_state(std::size_t id, NodeState state);

  // Molecules from which `id` is reachable through non-cyclic reactions, including `id`.
  std::vector<bool> ancestors(std::size_t id) const;

  // Recomputes rn upward from `from` and then every v_t and solved flag.
  void update(std::size_t from);
  // Full recomputation of v_t and the solved flags from the current rn values.
  void refresh_downward();

  std::vector<std::size_t> frontier() const;

 private:
  double molecule_rn(std::size_t id) const;
  double reaction_rn(std::size_t id) const;
  std::vector<std::size_t> topological_order() const;

  std::vector<MoleculeNode> molecules_;
  std::vector<ReactionNode> reactions_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> enforced_keys_;
};

enum class Termination {
  // Stop at the first constrained solution.
  first_solution,
  // Continue until the best solution's cost is no larger than the smallest
  // frontier v_t; optimal when initial reaction numbers are lower bounds.
  proven_optimal,
  // Expand until the frontier is empty or the budget is spent.
  exhaust,
};

struct SearchConfig {
  std::size_t expansion_budget = 100;
  std::size_t top_n = 50;
  TangoParams tango;
  SimilarityConfig similarity;
  // Require the enforced starting material as a leaf and use the TANGO node cost.
  bool constrained = true;
  Termination termination = Termination::first_solution;

  void validate() const;
};

struct Route {
  struct Node {
    std::string smiles;
    bool purchasable = false;
    bool is_enforced_sm = false;
  };
  struct Step {
    std::size_t product = 0;
    std::vector<std::size_t> precursors;
    double cost = 0.0;
    double probability = 1.0;
  };

  // nodes[0] is the target. A molecule used twice appears twice.
  std::vector<Node> nodes;
  std::vector<Step> reactions;
  double total_cost = 0.0;

  std::size_t length() const { return reactions.size(); }
};

struct SearchResult {
  bool solved = false;
  std::optional<Route> route;
  std::size_t expansions_used = 0;
  // Policy calls made when the first solution appeared.
  std::optional<std::size_t> first_solution_expansions;
  double wall_time = 0.0;
  std::size_t molecule_nodes = 0;
  std::size_t reaction_nodes = 0;
};

using CostFunction = std::function<double(const Molecule&)>;

// Frontier node with the smallest v_t, earliest created on ties; nullopt when
// the frontier is empty.
std::optional<std::size_t> select_frontier(const SearchGraph& g);

// Expands a frontier node and returns the number of molecule nodes created.
// Policy exceptions mark the node dead.
std::size_t expand(SearchGraph& g, std::size_t node, const ExpansionPolicy& policy,
                   const Inventory& inventory, const CostFunction& initial_cost, std::size_t top_n);

void update(SearchGraph& g, std::size_t from);

// Cheapest solution tree under the root. With `constrained`, only trees that
// contain an enforced starting material as a leaf qualify.
std::optional<Route> extract_route(const SearchGraph& g, bool constrained);

/// Runs select / expand / update until solved, out of budget, or out of
/// frontier. `value` supplies V_m (defaults to the constant 0 oracle).
SearchResult run_search(const Molecule& target, const Molecule& sm, const ExpansionPolicy& policy,
                        const Inventory& inventory, const SearchConfig& config,
                        std::shared_ptr<const ValueOracle> value = nullptr);

// Same, but keeps the final graph for inspection.
SearchResult run_search(const Molecule& target, const Molecule& sm, const ExpansionPolicy& policy,
                        const Inventory& inventory, const SearchConfig& config,
                        std::shared_ptr<const ValueOracle> value,
                        std::unique_ptr<SearchGraph>* graph_out);

}  // namespace tango

#endif  // TANGO_SEARCH_HPP
