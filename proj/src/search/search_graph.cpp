#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tango/search.hpp"

namespace tango {

double reaction_cost(double probability) {
  if (!(probability > 0.0)) return kMaxReactionCost;
  return std::clamp(-std::log(probability), kMinReactionCost, kMaxReactionCost);
}

SearchGraph::SearchGraph(Molecule target, std::vector<Molecule> enforced_sms, double root_rn) {
  for (const auto& m : enforced_sms) enforced_keys_.push_back(m.canonical_key());
  const bool enforced = is_enforced(target);
  add_molecule(std::move(target), enforced ? NodeState::purchasable : NodeState::frontier, root_rn);
  refresh_downward();
}

std::optional<std::size_t> SearchGraph::find(const std::string& canonical_key) const {
  auto it = index_.find(canonical_key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SearchGraph::is_enforced(const Molecule& mol) const {
  return std::find(enforced_keys_.begin(), enforced_keys_.end(), mol.canonical_key()) !=
         enforced_keys_.end();
}

std::pair<std::size_t, bool> SearchGraph::add_molecule(Molecule mol, NodeState state,
                                                       double initial_rn) {
  if (auto it = index_.find(mol.canonical_key()); it != index_.end()) return {it->second, false};
  const std::size_t id = molecules_.size();
  index_.emplace(mol.canonical_key(), id);
  const bool enforced = is_enforced(mol);
  MoleculeNode node{std::move(mol), state, initial_rn, 0.0, 0.0, enforced, false, false, {}, {}};
  molecules_.push_back(std::move(node));
  molecules_.back().rn = molecule_rn(id);
  return {id, true};
}

std::size_t SearchGraph::add_reaction(std::size_t parent, std::vector<std::size_t> children,
                                      double probability,
                                      const std::vector<bool>* parent_ancestors) {
  if (children.empty()) throw std::invalid_argument("reaction without precursors");
  std::vector<std::size_t> unique;
  for (std::size_t c : children) {
    if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(c);
  }
  std::vector<bool> local;
  if (!parent_ancestors) {
    local = ancestors(parent);
    parent_ancestors = &local;
  }
  const std::size_t id = reactions_.size();
  ReactionNode r;
  r.parent = parent;
  r.children = std::move(unique);
  r.probability = probability;
  r.cost = reaction_cost(probability);
  for (std::size_t c : r.children) {
    if (c < parent_ancestors->size() && (*parent_ancestors)[c]) r.cyclic = true;
  }
  reactions_.push_back(std::move(r));
  molecules_[parent].child_reactions.push_back(id);
  for (std::size_t c : reactions_[id].children) molecules_[c].parent_reactions.push_back(id);
  reactions_[id].rn = reaction_rn(id);
  return id;
}

void SearchGraph::set_state(std::size_t id, NodeState state) {
  molecules_[id].state = state;
  molecules_[id].rn = molecule_rn(id);
}

std::vector<bool> SearchGraph::ancestors(std::size_t id) const {
  std::vector<bool> seen(molecules_.size(), false);
  std::vector<std::size_t> stack{id};
  seen[id] = true;
  while (!stack.empty()) {
    const std::size_t m = stack.back();
    stack.pop_back();
    for (std::size_t r : molecules_[m].parent_reactions) {
      if (reactions_[r].cyclic) continue;
      const std::size_t p = reactions_[r].parent;
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

double SearchGraph::molecule_rn(std::size_t id) const {
  const MoleculeNode& m = molecules_[id];
  switch (m.state) {
    case NodeState::purchasable: return 0.0;
    case NodeState::dead: return kDeadCost;
    case NodeState::frontier: return m.initial_rn;
    case NodeState::expanded: break;
  }
  double best = kDeadCost;
  bool any = false;
  for (std::size_t r : m.child_reactions) {
    best = any ? std::min(best, reactions_[r].rn) : reactions_[r].rn;
    any = true;
  }
  return best;
}

double SearchGraph::reaction_rn(std::size_t id) const {
  const ReactionNode& r = reactions_[id];
  if (r.cyclic) return kDeadCost;
  double sum = r.cost;
  for (std::size_t c : r.children) sum += molecules_[c].rn;
  return sum;
}

void SearchGraph::update(std::size_t from) {
  for (std::size_t r : molecules_[from].child_reactions) reactions_[r].rn = reaction_rn(r);
  std::vector<std::size_t> work{from};
  while (!work.empty()) {
    const std::size_t m = work.back();
    work.pop_back();
    const double rn = molecule_rn(m);
    if (rn == molecules_[m].rn && m != from) continue;
    molecules_[m].rn = rn;
    for (std::size_t r : molecules_[m].parent_reactions) {
      if (reactions_[r].cyclic) continue;
      const double next = reaction_rn(r);
      if (next == reactions_[r].rn) continue;
      reactions_[r].rn = next;
      work.push_back(reactions_[r].parent);
    }
  }
  refresh_downward();
}

std::vector<std::size_t> SearchGraph::topological_order() const {
  const std::size_t n = molecules_.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& r : reactions_) {
    if (r.cyclic) continue;
    for (std::size_t c : r.children) ++indegree[c];
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) order.push_back(i);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t r : molecules_[order[head]].child_reactions) {
      if (reactions_[r].cyclic) continue;
      for (std::size_t c : reactions_[r].children) {
        if (--indegree[c] == 0) order.push_back(c);
      }
    }
  }
  if (order.size() != n) throw std::logic_error("search graph has a cycle");
  return order;
}

void SearchGraph::refresh_downward() {
  const auto order = topological_order();
  for (std::size_t m : order) {
    MoleculeNode& node = molecules_[m];
    if (m == root()) {
      node.v_t = node.rn;
    } else {
      double best = kDeadCost;
      bool any = false;
      for (std::size_t r : node.parent_reactions) {
        if (reactions_[r].cyclic) continue;
        best = any ? std::min(best, reactions_[r].v_t) : reactions_[r].v_t;
        any = true;
      }
      node.v_t = best;
    }
    for (std::size_t r : node.child_reactions) {
      ReactionNode& rx = reactions_[r];
      rx.v_t = rx.rn - node.rn + node.v_t;
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    MoleculeNode& node = molecules_[*it];
    node.solved = node.state == NodeState::purchasable;
    node.solved_with_sm = node.is_enforced_sm && node.solved;
    if (node.state != NodeState::expanded) continue;
    for (std::size_t r : node.child_reactions) {
      const ReactionNode& rx = reactions_[r];
      if (rx.cyclic) continue;
      bool all = true;
      bool with_sm = false;
      for (std::size_t c : rx.children) {
        all = all && molecules_[c].solved;
        with_sm = with_sm || molecules_[c].solved_with_sm;
      }
      node.solved = node.solved || all;
      node.solved_with_sm = node.solved_with_sm || (all && with_sm);
    }
  }
}

std::vector<std::size_t> SearchGraph::frontier() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < molecules_.size(); ++i) {
    if (molecules_[i].state == NodeState::frontier) out.push_back(i);
  }
  return out;
}

}  // namespace tango
