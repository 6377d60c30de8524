#ifndef TANGO_SIMIL_HPP
#define TANGO_SIMIL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tango/molgraph.hpp"

namespace tango {

inline constexpr int kDefaultFingerprintRadius = 2;
inline constexpr int kDefaultFingerprintWidth = 2048;
inline constexpr std::size_t kDefaultMcsBudget = 10000;

/// Fixed-width bit vector. Width is a power of two and at least 64.
class Fingerprint {
 public:
  explicit Fingerprint(int width = kDefaultFingerprintWidth, int radius = kDefaultFingerprintRadius);

  int width() const { return width_; }
  int radius() const { return radius_; }
  void set(std::size_t bit) { words_[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
  bool test(std::size_t bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1; }
  std::size_t popcount() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

 private:
  int width_;
  int radius_;
  std::vector<std::uint64_t> words_;
};

// Circular (ECFP-style) fingerprint. Each atom contributes one identifier per
// radius 0..radius, except where its environment has stopped growing.
Fingerprint morgan_fingerprint(const Molecule& mol, int radius = kDefaultFingerprintRadius,
                               int width = kDefaultFingerprintWidth);

// |a & b| / |a | b|; 1.0 when both are empty. Throws std::invalid_argument on
// width mismatch.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

/// Atom count of an approximate maximum common connected induced subgraph.
///
/// Atoms match on (element, aromatic flag) and bonds on exact order. The
/// search is an anytime backtracking enumeration of connected mappings that
/// stops after `budget` extension steps and returns the best size found, so
/// the result is a lower bound on the exact value. Argument order does not
/// affect the result.
std::size_t mcs_atoms(const Molecule& a, const Molecule& b, std::size_t budget = kDefaultMcsBudget);

// mcs / (|a| + |b| - mcs).
double fms(const Molecule& a, const Molecule& b, std::size_t budget = kDefaultMcsBudget);

}  // namespace tango

#endif  // TANGO_SIMIL_HPP
