#ifndef TANGO_SRC_MOLGRAPH_CANONICAL_HPP
#define TANGO_SRC_MOLGRAPH_CANONICAL_HPP

#include <span>
#include <string>
#include <vector>

#include "tango/molgraph.hpp"

namespace tango::detail {

struct Canonical {
  std::vector<int> ranks;
  std::string smiles;
};

// Only needs atoms, bonds and adjacency; safe to call from the Molecule
// constructor before the canonical fields are set.
Canonical canonicalize(const Molecule& mol);

// Appends the SMILES of the component containing `start`, marking its atoms
// in `visited`. Lower priority values are written first.
void write_component(const Molecule& mol, std::span<const int> priority, int start,
                     std::vector<char>& visited, std::string& out);

}  // namespace tango::detail

#endif  // TANGO_SRC_MOLGRAPH_CANONICAL_HPP
