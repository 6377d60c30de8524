#ifndef TANGO_MOLGRAPH_HPP
#define TANGO_MOLGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tango {

// Atomic number 0 is the "*" wildcard atom.
std::string_view element_symbol(int atomic_number);
// Returns -1 for unknown symbols. Case sensitive ("Cl", not "CL").
int element_number(std::string_view symbol);

enum class BondOrder : std::uint8_t { single = 1, double_ = 2, triple = 3, aromatic = 4 };

struct Atom {
  int element = 6;
  int formal_charge = 0;
  bool aromatic = false;
  // Total attached hydrogens, whether written in a bracket or implied by valence.
  int hydrogens = 0;
  // 0 means "no isotope given".
  int isotope = 0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::single;

  int other(int atom) const { return atom == begin ? end : begin; }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Immutable molecular graph. Construction validates the graph and computes
/// the canonical SMILES key and canonical atom ranks, so every Molecule that
/// exists is usable as a search-graph identity.
class Molecule {
 public:
  struct Neighbor {
    int atom;
    int bond;
  };

  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds);

  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t bond_count() const { return bonds_.size(); }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  const Bond& bond(std::size_t i) const { return bonds_[i]; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  std::span<const Neighbor> neighbors(std::size_t atom) const {
    return {adjacency_.data() + offsets_[atom], adjacency_.data() + offsets_[atom + 1]};
  }
  std::size_t degree(std::size_t atom) const { return offsets_[atom + 1] - offsets_[atom]; }
  // Index of the bond joining a and b, or -1.
  int bond_between(int a, int b) const;

  const std::string& canonical_key() const { return key_; }
  // Canonical rank of each atom (a permutation of 0..n-1).
  std::span<const int> canonical_ranks() const { return ranks_; }

  // Connected-component id per atom, numbered in order of first atom.
  std::vector<int> component_ids() const;
  std::size_t component_count() const;

  // Whether a bond lies on a ring (is not a bridge of the graph).
  std::vector<bool> ring_bonds() const;

  // Same molecule with atom i moved to position perm[i].
  Molecule permuted(std::span<const int> perm) const;

  friend bool operator==(const Molecule& a, const Molecule& b) { return a.key_ == b.key_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<int> ranks_;
  std::string key_;
};

Molecule parse_smiles(std::string_view text);

std::string write_canonical(const Molecule& mol);

// Writes a SMILES string where traversal starts at, and prefers, atoms with
// lower priority values. `priority` must be a permutation of 0..n-1.
std::string write_smiles(const Molecule& mol, std::span<const int> priority);

std::vector<Molecule> fragments(const Molecule& mol);

// Hydrogen count implied by the organic-subset valence rules for an
// unbracketed atom with the given bond-order sum; -1 if the element has no
// default valence.
int implicit_hydrogens(int element, bool aromatic, int bond_order_sum, bool has_aromatic_bond);

}  // namespace tango

#endif  // TANGO_MOLGRAPH_HPP
