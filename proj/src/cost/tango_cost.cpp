#include "tango/cost.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace tango {
namespace {

double combine_scores(double tanimoto_sim, double fms_sim, double c) {
  // Written so that c = 0 yields the Tanimoto term bit-exactly and equal
  // scores yield that score for any c.
  return tanimoto_sim + c * (fms_sim - tanimoto_sim);
}

double reward_against(const Molecule& node, const Fingerprint& node_fp,
                      const StartingMaterialSet::Member& sm, const TangoParams& params,
                      std::size_t mcs_budget) {
  if (node.canonical_key() == sm.mol.canonical_key()) return 1.0;
  const double tan = tanimoto(node_fp, sm.fp);
  // FMS is skipped when its weight is zero.
  const double sub = params.c > 0.0 ? fms(node, sm.mol, mcs_budget) : 0.0;
  return std::clamp(combine_scores(tan, sub, params.c), 0.0, 1.0);
}

}  // namespace

void TangoParams::validate() const {
  if (!(k >= 0.0)) throw std::invalid_argument("k must be non-negative");
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("c must lie in [0, 1]");
}

StartingMaterialSet::StartingMaterialSet(std::vector<Molecule> members, SimilarityConfig config)
    : config_(config) {
  if (members.empty()) throw std::invalid_argument("starting material set is empty");
  std::unordered_set<std::string> seen;
  for (auto& m : members) {
    if (!seen.insert(m.canonical_key()).second) continue;
    Fingerprint fp = morgan_fingerprint(m, config_.radius, config_.width);
    members_.push_back({std::move(m), std::move(fp)});
  }
}

bool StartingMaterialSet::contains(const Molecule& mol) const {
  return std::any_of(members_.begin(), members_.end(), [&](const Member& m) {
    return m.mol.canonical_key() == mol.canonical_key();
  });
}

double tango_reward(const Molecule& node, const StartingMaterialSet& sms, const TangoParams& params) {
  params.validate();
  const auto& cfg = sms.config();
  const Fingerprint fp = morgan_fingerprint(node, cfg.radius, cfg.width);
  double best = 0.0;
  for (const auto& sm : sms.members()) {
    best = std::max(best, reward_against(node, fp, sm, params, cfg.mcs_budget));
  }
  return best;
}

double tango_node_cost(const Molecule& node, const StartingMaterialSet& sms,
                       const TangoParams& params, double retro_cost) {
  if (retro_cost < 0.0) throw std::invalid_argument("retro cost must be non-negative");
  return tango_cost_from_reward(tango_reward(node, sms, params), params.k, retro_cost);
}

TableValue TableValue::load(const std::filesystem::path& path, double fallback) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open value table " + path.string());
  TableValue table(fallback);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("value table line " + std::to_string(lineno) + " has no tab");
    }
    const Molecule mol = parse_smiles(std::string_view(line).substr(0, tab));
    table.set(mol, std::stod(line.substr(tab + 1)));
  }
  return table;
}

double TableValue::value(const Molecule& mol) const {
  const auto it = table_.find(mol.canonical_key());
  return it == table_.end() ? fallback_ : it->second;
}

TangoCost::TangoCost(StartingMaterialSet sms, TangoParams params,
                     std::shared_ptr<const ValueOracle> value)
    : sms_(std::move(sms)), params_(params), value_(std::move(value)) {
  params_.validate();
  if (!value_) throw std::invalid_argument("value oracle is null");
}

double TangoCost::pair_reward(const Molecule& node, std::optional<Fingerprint>& node_fp,
                              const StartingMaterialSet::Member& sm) const {
  std::string key = node.canonical_key();
  key += ' ';
  key += sm.mol.canonical_key();
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const auto& cfg = sms_.config();
  if (!node_fp) node_fp = morgan_fingerprint(node, cfg.radius, cfg.width);
  const double r = reward_against(node, *node_fp, sm, params_, cfg.mcs_budget);
  std::lock_guard lock(mutex_);
  cache_.emplace(std::move(key), r);
  return r;
}

double TangoCost::reward(const Molecule& node) const {
  std::optional<Fingerprint> fp;
  double best = 0.0;
  for (const auto& sm : sms_.members()) best = std::max(best, pair_reward(node, fp, sm));
  return best;
}

double TangoCost::node_cost(const Molecule& node) const {
  return tango_cost_from_reward(reward(node), params_.k, value_->value(node));
}

std::size_t TangoCost::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace tango
