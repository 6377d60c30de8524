#include "tango/policy.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace tango {
namespace {

using json = nlohmann::json;

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::vector<ExpansionCandidate> expand_one_step(const ExpansionPolicy& policy, const Molecule& mol,
                                                std::size_t top_n) {
  if (top_n == 0) throw std::invalid_argument("top_n must be at least 1");
  auto out = policy.expand(mol, top_n);
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

std::size_t ReactionCorpus::add(Molecule product, std::vector<Molecule> precursors,
                                double probability) {
  if (!(probability > 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("reaction probability must lie in (0, 1]");
  }
  if (precursors.empty()) throw std::invalid_argument("reaction has no precursors");
  const std::size_t index = reactions_.size();
  auto& slot = by_product_[product.canonical_key()];
  reactions_.push_back({std::move(product), std::move(precursors), probability});
  // Keep each product's list sorted by probability, ties in insertion order.
  auto pos = std::upper_bound(slot.begin(), slot.end(), probability, [&](double p, std::size_t i) {
    return p > reactions_[i].probability;
  });
  slot.insert(pos, index);
  return index;
}

std::vector<std::size_t> ReactionCorpus::reactions_for(const std::string& product_key) const {
  auto it = by_product_.find(product_key);
  return it == by_product_.end() ? std::vector<std::size_t>{} : it->second;
}

std::vector<ExpansionCandidate> ReactionCorpus::expand(const Molecule& mol, std::size_t top_n) const {
  std::vector<ExpansionCandidate> out;
  auto it = by_product_.find(mol.canonical_key());
  if (it == by_product_.end()) return out;
  for (std::size_t i : it->second) {
    if (out.size() >= top_n) break;
    out.push_back({reactions_[i].precursors, reactions_[i].probability});
  }
  return out;
}

ReactionCorpus ReactionCorpus::load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path.string());
  ReactionCorpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      std::vector<Molecule> precursors;
      for (const auto& p : j.at("precursors")) {
        precursors.push_back(parse_smiles(p.get<std::string>()));
      }
      corpus.add(parse_smiles(j.at("product").get<std::string>()), std::move(precursors),
                 j.at("p").get<double>());
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return corpus;
}

std::string ReactionCorpus::to_jsonl() const {
  std::string out;
  for (const auto& r : reactions_) {
    json j;
    j["product"] = r.product.canonical_key();
    j["precursors"] = json::array();
    for (const auto& p : r.precursors) j["precursors"].push_back(p.canonical_key());
    j["p"] = r.probability;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void ReactionCorpus::save_jsonl(const std::filesystem::path& path) const {
  open_for_write(path) << to_jsonl();
}

std::vector<ExpansionCandidate> bond_disconnection_candidates(const Molecule& mol) {
  std::vector<ExpansionCandidate> out;
  if (mol.atom_count() < 2) return out;
  const auto ring = mol.ring_bonds();
  const auto ranks = mol.canonical_ranks();

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < mol.bond_count(); ++i) {
    if (!ring[i] && mol.bond(i).order == BondOrder::single) order.push_back(i);
  }
  auto bond_rank = [&](std::size_t i) {
    const auto& b = mol.bond(i);
    return std::minmax(ranks[b.begin], ranks[b.end]);
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return bond_rank(x) < bond_rank(y); });

  std::set<std::vector<std::string>> seen;
  for (std::size_t cut : order) {
    std::vector<Atom> atoms(mol.atoms().begin(), mol.atoms().end());
    std::vector<Bond> bonds;
    for (std::size_t i = 0; i < mol.bond_count(); ++i) {
      if (i != cut) bonds.push_back(mol.bond(i));
    }
    const Bond& b = mol.bond(cut);
    atoms[b.begin].hydrogens = std::min(atoms[b.begin].hydrogens + 1, 8);
    atoms[b.end].hydrogens = std::min(atoms[b.end].hydrogens + 1, 8);
    auto parts = fragments(Molecule(std::move(atoms), std::move(bonds)));
    std::vector<std::string> keys;
    for (const auto& p : parts) keys.push_back(p.canonical_key());
    std::sort(keys.begin(), keys.end());
    if (!seen.insert(keys).second) continue;
    out.push_back({std::move(parts), 1.0});
  }
  for (auto& c : out) c.probability = 1.0 / static_cast<double>(out.size());
  return out;
}

std::vector<ExpansionCandidate> BondDisconnectionPolicy::expand(const Molecule& mol,
                                                                std::size_t top_n) const {
  auto out = bond_disconnection_candidates(mol);
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

std::string instances_to_jsonl(const std::vector<BenchmarkInstance>& instances) {
  std::string out;
  for (const auto& inst : instances) {
    json j;
    j["target"] = inst.target.canonical_key();
    j["sm"] = inst.sm.canonical_key();
    if (inst.ground_truth_route) {
      j["route"] = json::array();
      for (const auto& m : *inst.ground_truth_route) j["route"].push_back(m.canonical_key());
    }
    if (!inst.route_reactions.empty()) j["reactions"] = inst.route_reactions;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_instances(const std::filesystem::path& path,
                    const std::vector<BenchmarkInstance>& instances) {
  open_for_write(path) << instances_to_jsonl(instances);
}

std::vector<BenchmarkInstance> load_instances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instances " + path.string());
  std::vector<BenchmarkInstance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      BenchmarkInstance inst{parse_smiles(j.at("target").get<std::string>()),
                             parse_smiles(j.at("sm").get<std::string>()), std::nullopt, {}};
      if (j.contains("route")) {
        std::vector<Molecule> route;
        for (const auto& s : j.at("route")) route.push_back(parse_smiles(s.get<std::string>()));
        inst.ground_truth_route = std::move(route);
      }
      if (j.contains("reactions")) {
        inst.route_reactions = j.at("reactions").get<std::vector<std::size_t>>();
      }
      out.push_back(std::move(inst));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace tango
