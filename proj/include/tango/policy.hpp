#ifndef TANGO_POLICY_HPP
#define TANGO_POLICY_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tango/molgraph.hpp"

namespace tango {

struct ExpansionCandidate {
  std::vector<Molecule> precursors;
  double probability = 1.0;
};

/// Single-step retrosynthesis oracle. Implementations must be deterministic
/// and safe for concurrent calls.
class ExpansionPolicy {
 public:
  virtual ~ExpansionPolicy() = default;
  // At most top_n candidates, sorted by non-increasing probability.
  virtual std::vector<ExpansionCandidate> expand(const Molecule& mol, std::size_t top_n) const = 0;
};

// Checks top_n >= 1 and enforces the top_n cutoff on whatever the policy returns.
std::vector<ExpansionCandidate> expand_one_step(const ExpansionPolicy& policy, const Molecule& mol,
                                                std::size_t top_n);

/// Tabular policy: known reactions indexed by canonical product SMILES.
class ReactionCorpus final : public ExpansionPolicy {
 public:
  struct Reaction {
    Molecule product;
    std::vector<Molecule> precursors;
    double probability;
  };

  // Returns the reaction's index. Probability must lie in (0, 1].
  std::size_t add(Molecule product, std::vector<Molecule> precursors, double probability);

  std::size_t size() const { return reactions_.size(); }
  const Reaction& reaction(std::size_t i) const { return reactions_[i]; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  // Indices of reactions producing the molecule, by non-increasing probability.
  std::vector<std::size_t> reactions_for(const std::string& product_key) const;

  std::vector<ExpansionCandidate> expand(const Molecule& mol, std::size_t top_n) const override;

  // JSON lines: {"product": ..., "precursors": [...], "p": ...}
  static ReactionCorpus load_jsonl(const std::filesystem::path& path);
  void save_jsonl(const std::filesystem::path& path) const;
  std::string to_jsonl() const;

 private:
  std::vector<Reaction> reactions_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_product_;
};

// One candidate per acyclic single bond: the two hydrogen-capped fragments,
// with charges preserved. Candidates with identical precursor sets are
// emitted once; probabilities are uniform over what remains.
std::vector<ExpansionCandidate> bond_disconnection_candidates(const Molecule& mol);

class BondDisconnectionPolicy final : public ExpansionPolicy {
 public:
  std::vector<ExpansionCandidate> expand(const Molecule& mol, std::size_t top_n) const override;
};

struct BenchmarkInstance {
  Molecule target;
  Molecule sm;
  // m_r .. m_s along the known synthesis, when available.
  std::optional<std::vector<Molecule>> ground_truth_route;
  // Corpus indices of the route's reactions, root side first.
  std::vector<std::size_t> route_reactions;
};

std::string instances_to_jsonl(const std::vector<BenchmarkInstance>& instances);
void save_instances(const std::filesystem::path& path, const std::vector<BenchmarkInstance>& instances);
// Instances missing "route" get no ground truth.
std::vector<BenchmarkInstance> load_instances(const std::filesystem::path& path);

struct GeneratorConfig {
  std::uint64_t seed = 7;
  std::size_t instances = 100;
  int min_depth = 4;
  int max_depth = 4;
  // Building blocks consumed by each on-route reaction besides the on-route precursor.
  int branching = 1;
  // Off-route reactions attached to every on-route and decoy product.
  int distractors = 2;
};

struct GeneratedBenchmark {
  ReactionCorpus corpus;
  std::vector<BenchmarkInstance> instances;
  // Canonical SMILES of the purchasable building blocks.
  std::vector<std::string> inventory;
};

// The fixed alphabet synthetic molecules are assembled from.
const std::vector<std::string>& fragment_alphabet();

GeneratedBenchmark generate_benchmark(const GeneratorConfig& config);
GeneratedBenchmark generate_benchmark(std::uint64_t seed, std::size_t n_instances, int depth,
                                      int branching);

}  // namespace tango

#endif  // TANGO_POLICY_HPP
