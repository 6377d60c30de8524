#include "canonical.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace tango::detail {
namespace {

// Past this many completed labelings per component, tied classes are broken
// by trying only their first member.
constexpr int kMaxLeaves = 64;

class ComponentCanonicalizer {
 public:
  ComponentCanonicalizer(const Molecule& mol, std::vector<int> atoms)
      : mol_(mol), atoms_(std::move(atoms)), sig_offsets_(mol.atom_count() + 1, 0) {
    for (std::size_t i = 0; i < mol.atom_count(); ++i) {
      sig_offsets_[i + 1] = sig_offsets_[i] + mol.degree(i);
    }
    sig_.resize(sig_offsets_.back());
  }

  void run(std::vector<int>& global_ranks, std::string& smiles) {
    std::vector<int> rank(mol_.atom_count(), 0);
    auto invariant = [&](int a) {
      const Atom& at = mol_.atom(a);
      return std::make_tuple(at.element, at.formal_charge, mol_.degree(a), at.hydrogens,
                             at.aromatic, at.isotope);
    };
    std::vector<int> order = atoms_;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return invariant(x) < invariant(y); });
    int classes = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0 && invariant(order[i - 1]) != invariant(order[i])) ++classes;
      rank[order[i]] = classes;
    }
    classes = refine(rank, classes + 1);
    search(rank, classes);
    for (int a : atoms_) global_ranks[a] = best_rank_[a];
    smiles = best_;
  }

 private:
  int refine(std::vector<int>& rank, int classes) {
    std::vector<int> order = atoms_;
    while (true) {
      for (int a : atoms_) {
        std::size_t k = sig_offsets_[a];
        for (const auto& nb : mol_.neighbors(a)) {
          sig_[k++] = rank[nb.atom] * 8 + static_cast<int>(mol_.bond(nb.bond).order);
        }
        std::sort(sig_.begin() + sig_offsets_[a], sig_.begin() + sig_offsets_[a + 1]);
      }
      auto less = [&](int x, int y) {
        if (rank[x] != rank[y]) return rank[x] < rank[y];
        return std::lexicographical_compare(
            sig_.begin() + sig_offsets_[x], sig_.begin() + sig_offsets_[x + 1],
            sig_.begin() + sig_offsets_[y], sig_.begin() + sig_offsets_[y + 1]);
      };
      std::sort(order.begin(), order.end(), less);
      std::vector<int> next(rank.size(), 0);
      int c = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && less(order[i - 1], order[i])) ++c;
        next[order[i]] = c;
      }
      ++c;
      rank.swap(next);
      if (c == classes) return c;
      classes = c;
    }
  }

  void search(const std::vector<int>& rank, int classes) {
    if (classes == static_cast<int>(atoms_.size())) {
      int start = atoms_.front();
      for (int a : atoms_) {
        if (rank[a] < rank[start]) start = a;
      }
      std::vector<char> visited(mol_.atom_count(), 0);
      std::string s;
      write_component(mol_, rank, start, visited, s);
      if (leaves_ == 0 || s < best_) {
        best_ = std::move(s);
        best_rank_ = rank;
      }
      ++leaves_;
      return;
    }
    std::vector<int> count(classes, 0);
    for (int a : atoms_) ++count[rank[a]];
    int target = 0;
    while (count[target] < 2) ++target;
    bool first = true;
    for (int a : atoms_) {
      if (rank[a] != target) continue;
      if (!first && leaves_ >= kMaxLeaves) break;
      first = false;
      std::vector<int> split(rank.size(), 0);
      for (int b : atoms_) split[b] = 2 * rank[b] + (rank[b] == target && b != a ? 1 : 0);
      const int c = refine(split, classes + 1);
      search(split, c);
    }
  }

  const Molecule& mol_;
  std::vector<int> atoms_;
  std::vector<std::size_t> sig_offsets_;
  std::vector<int> sig_;
  int leaves_ = 0;
  std::string best_;
  std::vector<int> best_rank_;
};

}  // namespace

Canonical canonicalize(const Molecule& mol) {
  const std::size_t n = mol.atom_count();
  const auto comp = mol.component_ids();
  const int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> members(ncomp);
  for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(static_cast<int>(i));

  std::vector<int> local_rank(n, 0);
  std::vector<std::string> strings(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    ComponentCanonicalizer(mol, members[c]).run(local_rank, strings[c]);
  }

  std::vector<int> comp_order(ncomp);
  std::iota(comp_order.begin(), comp_order.end(), 0);
  std::stable_sort(comp_order.begin(), comp_order.end(),
                   [&](int x, int y) { return strings[x] < strings[y]; });

  Canonical out;
  out.ranks.assign(n, 0);
  int offset = 0;
  for (int c : comp_order) {
    if (!out.smiles.empty()) out.smiles += '.';
    out.smiles += strings[c];
    for (int a : members[c]) out.ranks[a] = offset + local_rank[a];
    offset += static_cast<int>(members[c].size());
  }
  return out;
}

}  // namespace tango::detail
