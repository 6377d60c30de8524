#ifndef TANGO_COST_HPP
#define TANGO_COST_HPP

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tango/molgraph.hpp"
#include "tango/simil.hpp"

namespace tango {

/// Weights of the starting-material cost. `k` scales the similarity penalty
/// against the retrosynthetic value; `c` is the weight given to the
/// substructure overlap (FMS), with 1 - c going to Tanimoto similarity.
struct TangoParams {
  double k = 25.0;
  double c = 0.3;

  // Throws std::invalid_argument when k < 0 or c is outside [0, 1].
  void validate() const;
};

struct SimilarityConfig {
  int radius = kDefaultFingerprintRadius;
  int width = kDefaultFingerprintWidth;
  std::size_t mcs_budget = kDefaultMcsBudget;
};

class StartingMaterialSet {
 public:
  struct Member {
    Molecule mol;
    Fingerprint fp;
  };

  // Members are deduplicated by canonical key. Throws on an empty list.
  explicit StartingMaterialSet(std::vector<Molecule> members, SimilarityConfig config = {});

  std::span<const Member> members() const { return members_; }
  const SimilarityConfig& config() const { return config_; }
  bool contains(const Molecule& mol) const;

 private:
  std::vector<Member> members_;
  SimilarityConfig config_;
};

// Best (1 - c) * Tanimoto + c * FMS over the starting materials, in [0, 1].
double tango_reward(const Molecule& node, const StartingMaterialSet& sms, const TangoParams& params);

inline double tango_cost_from_reward(double reward, double k, double retro_cost) {
  return k * (1.0 - reward) + retro_cost;
}

double tango_node_cost(const Molecule& node, const StartingMaterialSet& sms,
                       const TangoParams& params, double retro_cost);

/// Unconditional estimate V_m of the cost to make a molecule.
class ValueOracle {
 public:
  virtual ~ValueOracle() = default;
  virtual double value(const Molecule& mol) const = 0;
};

class ConstantValue final : public ValueOracle {
 public:
  explicit ConstantValue(double value = 0.0) : value_(value) {}
  double value(const Molecule&) const override { return value_; }

 private:
  double value_;
};

// Values keyed by canonical SMILES; misses fall back to a constant.
class TableValue final : public ValueOracle {
 public:
  explicit TableValue(double fallback = 0.0) : fallback_(fallback) {}

  // Reads "smiles<TAB>cost" lines. Keys are re-canonicalized.
  static TableValue load(const std::filesystem::path& path, double fallback = 0.0);

  void set(const Molecule& mol, double value) { table_[mol.canonical_key()] = value; }
  std::size_t size() const { return table_.size(); }
  double value(const Molecule& mol) const override;

 private:
  std::unordered_map<std::string, double> table_;
  double fallback_;
};

/// Node cost used by the constrained search: k * (1 - reward) + V_m, with the
/// reward of every (node, starting material) pair memoized. Safe to share
/// between threads.
class TangoCost {
 public:
  TangoCost(StartingMaterialSet sms, TangoParams params,
            std::shared_ptr<const ValueOracle> value = std::make_shared<ConstantValue>());

  double reward(const Molecule& node) const;
  double node_cost(const Molecule& node) const;
  double operator()(const Molecule& node) const { return node_cost(node); }

  const StartingMaterialSet& starting_materials() const { return sms_; }
  const TangoParams& params() const { return params_; }
  const ValueOracle& value_oracle() const { return *value_; }
  std::size_t cache_size() const;

 private:
  double pair_reward(const Molecule& node, std::optional<Fingerprint>& node_fp,
                     const StartingMaterialSet::Member& sm) const;

  StartingMaterialSet sms_;
  TangoParams params_;
  std::shared_ptr<const ValueOracle> value_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, double> cache_;
};

}  // namespace tango

#endif  // TANGO_COST_HPP
