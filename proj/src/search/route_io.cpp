#include "tango/route_io.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tango {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::first_solution: return "first_solution";
    case Termination::proven_optimal: return "proven_optimal";
    case Termination::exhaust: return "exhaust";
  }
  return "?";
}

Termination parse_termination(const std::string& name) {
  for (auto t : {Termination::first_solution, Termination::proven_optimal, Termination::exhaust}) {
    if (name == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown termination mode: " + name);
}

std::string route_to_json(const SearchResult& result, const SearchConfig& config,
                          const Molecule& target, const Molecule& sm) {
  using nlohmann::json;
  json doc;
  doc["target"] = target.canonical_key();
  doc["sm"] = sm.canonical_key();
  doc["solved"] = result.solved;
  if (result.route) {
    const Route& r = *result.route;
    json nodes = json::array();
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      nodes.push_back({{"id", i},
                       {"smiles", r.nodes[i].smiles},
                       {"purchasable", r.nodes[i].purchasable},
                       {"is_enforced_sm", r.nodes[i].is_enforced_sm}});
    }
    json reactions = json::array();
    for (const auto& s : r.reactions) {
      reactions.push_back({{"parent", s.product},
                           {"children", s.precursors},
                           {"cost", s.cost},
                           {"probability", s.probability}});
    }
    doc["route"] = {{"nodes", std::move(nodes)},
                    {"reactions", std::move(reactions)},
                    {"total_cost", r.total_cost},
                    {"length", r.length()}};
  } else {
    doc["route"] = nullptr;
  }
  json meta;
  meta["expansions_used"] = result.expansions_used;
  meta["first_solution_expansions"] =
      result.first_solution_expansions ? json(*result.first_solution_expansions) : json(nullptr);
  meta["wall_time"] = result.wall_time;
  meta["molecule_nodes"] = result.molecule_nodes;
  meta["reaction_nodes"] = result.reaction_nodes;
  meta["config"] = {{"budget", config.expansion_budget},
                    {"top_n", config.top_n},
                    {"k", config.tango.k},
                    {"c", config.tango.c},
                    {"radius", config.similarity.radius},
                    {"width", config.similarity.width},
                    {"mcs_budget", config.similarity.mcs_budget},
                    {"constrained", config.constrained},
                    {"termination", to_string(config.termination)}};
  doc["metadata"] = std::move(meta);
  return doc.dump(2) + "\n";
}

std::string route_to_dot(const Route& route) {
  std::ostringstream out;
  out << "digraph route {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < route.nodes.size(); ++i) {
    const auto& n = route.nodes[i];
    out << "  m" << i << " [shape=box, label=" << nlohmann::json(n.smiles).dump();
    if (n.is_enforced_sm) {
      out << ", style=filled, fillcolor=gold";
    } else if (n.purchasable) {
      out << ", style=filled, fillcolor=lightgrey";
    }
    out << "];\n";
  }
  for (std::size_t j = 0; j < route.reactions.size(); ++j) {
    const auto& s = route.reactions[j];
    out << "  r" << j << " [shape=point];\n";
    out << "  m" << s.product << " -> r" << j << " [label=\"" << s.cost << "\"];\n";
    for (std::size_t c : s.precursors) out << "  r" << j << " -> m" << c << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tango
