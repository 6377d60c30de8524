#include "tango/molgraph.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

#include "canonical.hpp"

namespace tango {
namespace {

constexpr std::array<std::string_view, 119> kSymbols = {
    "*",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si",
    "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu",
    "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru",
    "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",
    "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac",
    "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf",
    "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

}  // namespace

std::string_view element_symbol(int atomic_number) {
  if (atomic_number < 0 || atomic_number >= static_cast<int>(kSymbols.size())) {
    return {};
  }
  return kSymbols[atomic_number];
}

int element_number(std::string_view symbol) {
  for (std::size_t i = 0; i < kSymbols.size(); ++i) {
    if (kSymbols[i] == symbol) return static_cast<int>(i);
  }
  return -1;
}

int implicit_hydrogens(int element, bool aromatic, int bond_order_sum, bool has_aromatic_bond) {
  static constexpr std::array<int, 1> kB{3}, kC{4}, kN{3}, kO{2}, kHal{1};
  static constexpr std::array<int, 2> kP{3, 5};
  static constexpr std::array<int, 3> kS{2, 4, 6};
  std::span<const int> valences;
  switch (element) {
    case 5: valences = kB; break;
    case 6: valences = kC; break;
    case 7: valences = kN; break;
    case 8: valences = kO; break;
    case 15: valences = kP; break;
    case 16: valences = kS; break;
    case 9:
    case 17:
    case 35:
    case 53: valences = kHal; break;
    default: return -1;
  }
  if (aromatic) {
    // One valence unit goes to the delocalized pi system; only the lowest
    // valence state is considered.
    const int used = bond_order_sum + (has_aromatic_bond ? 1 : 0);
    return std::max(0, valences.front() - used);
  }
  for (int v : valences) {
    if (v >= bond_order_sum) return v - bond_order_sum;
  }
  return 0;
}

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  if (atoms_.empty()) throw std::invalid_argument("molecule has no atoms");
  const int n = static_cast<int>(atoms_.size());
  for (const Atom& a : atoms_) {
    if (element_symbol(a.element).empty()) throw std::invalid_argument("invalid element");
    if (a.hydrogens < 0 || a.hydrogens > 8) throw std::invalid_argument("hydrogen count out of range");
    if (a.isotope < 0) throw std::invalid_argument("negative isotope");
  }
  std::vector<std::size_t> deg(n, 0);
  for (Bond& b : bonds_) {
    if (b.begin < 0 || b.end < 0 || b.begin >= n || b.end >= n || b.begin == b.end) {
      throw std::invalid_argument("bond endpoints invalid");
    }
    if (b.begin > b.end) std::swap(b.begin, b.end);
    ++deg[b.begin];
    ++deg[b.end];
  }
  offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    const Bond& b = bonds_[i];
    adjacency_[fill[b.begin]++] = {b.end, static_cast<int>(i)};
    adjacency_[fill[b.end]++] = {b.begin, static_cast<int>(i)};
  }
  for (int i = 0; i < n; ++i) {
    auto first = adjacency_.begin() + offsets_[i];
    auto last = adjacency_.begin() + offsets_[i + 1];
    std::sort(first, last, [](const Neighbor& x, const Neighbor& y) { return x.atom < y.atom; });
    if (std::adjacent_find(first, last, [](const Neighbor& x, const Neighbor& y) {
          return x.atom == y.atom;
        }) != last) {
      throw std::invalid_argument("duplicate bond between atom pair");
    }
  }
  auto canon = detail::canonicalize(*this);
  ranks_ = std::move(canon.ranks);
  key_ = std::move(canon.smiles);
}

int Molecule::bond_between(int a, int b) const {
  for (const Neighbor& nb : neighbors(a)) {
    if (nb.atom == b) return nb.bond;
  }
  return -1;
}

std::vector<int> Molecule::component_ids() const {
  const std::size_t n = atoms_.size();
  std::vector<int> comp(n, -1);
  std::vector<int> stack;
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(static_cast<int>(s));
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : neighbors(a)) {
        if (comp[nb.atom] == -1) {
          comp[nb.atom] = next;
          stack.push_back(nb.atom);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::size_t Molecule::component_count() const {
  auto ids = component_ids();
  return static_cast<std::size_t>(*std::max_element(ids.begin(), ids.end()) + 1);
}

std::vector<bool> Molecule::ring_bonds() const {
  // Bridges are exactly the acyclic bonds; everything else sits on a ring.
  const int n = static_cast<int>(atoms_.size());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> ring(bonds_.size(), true);
  int timer = 0;
  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int s = 0; s < n; ++s) {
    if (disc[s] != -1) continue;
    disc[s] = low[s] = timer++;
    stack.push_back({s, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nbs = neighbors(f.atom);
      if (f.next < nbs.size()) {
        const Neighbor nb = nbs[f.next++];
        if (nb.bond == f.parent_bond) continue;
        if (disc[nb.atom] == -1) {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({nb.atom, nb.bond, 0});
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& parent = stack.back();
          low[parent.atom] = std::min(low[parent.atom], low[done.atom]);
          if (low[done.atom] > disc[parent.atom]) ring[done.parent_bond] = false;
        }
      }
    }
  }
  return ring;
}

Molecule Molecule::permuted(std::span<const int> perm) const {
  if (perm.size() != atoms_.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Atom> atoms(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) atoms[perm[i]] = atoms_[i];
  std::vector<Bond> bonds;
  bonds.reserve(bonds_.size());
  for (const Bond& b : bonds_) bonds.push_back({perm[b.begin], perm[b.end], b.order});
  return Molecule(std::move(atoms), std::move(bonds));
}

std::string write_canonical(const Molecule& mol) { return mol.canonical_key(); }

std::vector<Molecule> fragments(const Molecule& mol) {
  const auto comp = mol.component_ids();
  const std::size_t ncomp = static_cast<std::size_t>(*std::max_element(comp.begin(), comp.end()) + 1);
  if (ncomp == 1) return {mol};
  std::vector<std::vector<Atom>> atoms(ncomp);
  std::vector<std::vector<Bond>> bonds(ncomp);
  std::vector<int> local(mol.atom_count());
  for (std::size_t i = 0; i < mol.atom_count(); ++i) {
    local[i] = static_cast<int>(atoms[comp[i]].size());
    atoms[comp[i]].push_back(mol.atom(i));
  }
  for (const Bond& b : mol.bonds()) {
    bonds[comp[b.begin]].push_back({local[b.begin], local[b.end], b.order});
  }
  std::vector<Molecule> out;
  out.reserve(ncomp);
  for (std::size_t c = 0; c < ncomp; ++c) out.emplace_back(std::move(atoms[c]), std::move(bonds[c]));
  return out;
}

}  // namespace tango
