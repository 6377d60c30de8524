#include <algorithm>
#include <numeric>

#include "tango/simil.hpp"

namespace tango {
namespace {

constexpr int kLabels = 2 * 119;

int atom_label(const Atom& a) { return a.element * 2 + (a.aromatic ? 1 : 0); }

class McsSearch {
 public:
  McsSearch(const Molecule& a, const Molecule& b, std::size_t budget)
      : a_(a), b_(b), budget_(budget), map_a_(a.atom_count(), -1), map_b_(b.atom_count(), -1),
        excluded_(a.atom_count(), 0) {
    // Visit atoms in canonical order so the result is independent of input atom order.
    order_a_ = by_rank(a);
    order_b_ = by_rank(b);
    for (std::size_t i = 0; i < a.atom_count(); ++i) ++avail_a_[atom_label(a.atom(i))];
    for (std::size_t i = 0; i < b.atom_count(); ++i) ++avail_b_[atom_label(b.atom(i))];
    for (int label = 0; label < kLabels; ++label) {
      if (avail_a_[label] > 0 && avail_b_[label] > 0) labels_.push_back(label);
    }
  }

  std::size_t run() {
    for (int u : order_a_) {
      if (steps_ >= budget_) break;
      if (bound(0) <= best_) break;
      const int lu = atom_label(a_.atom(u));
      for (int v : order_b_) {
        if (steps_ >= budget_) break;
        if (atom_label(b_.atom(v)) != lu) continue;
        ++steps_;
        assign(u, v);
        extend(1);
        unassign(u, v);
      }
      // Every mapping that contains u has been enumerated.
      excluded_[u] = 1;
      --avail_a_[lu];
    }
    return best_;
  }

 private:
  static std::vector<int> by_rank(const Molecule& m) {
    std::vector<int> order(m.atom_count());
    std::iota(order.begin(), order.end(), 0);
    const auto ranks = m.canonical_ranks();
    std::sort(order.begin(), order.end(), [&](int x, int y) { return ranks[x] < ranks[y]; });
    return order;
  }

  std::size_t bound(std::size_t size) const {
    std::size_t extra = 0;
    for (int label : labels_) {
      extra += static_cast<std::size_t>(std::min(avail_a_[label], avail_b_[label]));
    }
    return size + extra;
  }

  void assign(int u, int v) {
    map_a_[u] = v;
    map_b_[v] = u;
    mapped_.push_back(u);
    --avail_a_[atom_label(a_.atom(u))];
    --avail_b_[atom_label(b_.atom(v))];
  }

  void unassign(int u, int v) {
    map_a_[u] = -1;
    map_b_[v] = -1;
    mapped_.pop_back();
    ++avail_a_[atom_label(a_.atom(u))];
    ++avail_b_[atom_label(b_.atom(v))];
  }

  // v is a valid image of u when the induced bonds to every mapped atom agree.
  bool consistent(int u, int v) const {
    for (int x : mapped_) {
      const int ba = a_.bond_between(u, x);
      const int bb = b_.bond_between(v, map_a_[x]);
      if ((ba < 0) != (bb < 0)) return false;
      if (ba >= 0 && a_.bond(ba).order != b_.bond(bb).order) return false;
    }
    return true;
  }

  void extend(std::size_t size) {
    best_ = std::max(best_, size);
    if (steps_ >= budget_ || bound(size) <= best_) return;

    int frontier = -1;
    int anchor = -1;
    for (int u : order_a_) {
      if (map_a_[u] >= 0 || excluded_[u]) continue;
      for (const auto& nb : a_.neighbors(u)) {
        if (map_a_[nb.atom] >= 0) {
          anchor = nb.atom;
          break;
        }
      }
      if (anchor >= 0) {
        frontier = u;
        break;
      }
    }
    if (frontier < 0) return;

    const int label = atom_label(a_.atom(frontier));
    // Candidate images are neighbours of the anchor's image, in canonical order.
    std::vector<int> candidates;
    for (const auto& nb : b_.neighbors(map_a_[anchor])) {
      if (map_b_[nb.atom] < 0 && atom_label(b_.atom(nb.atom)) == label) {
        candidates.push_back(nb.atom);
      }
    }
    const auto ranks = b_.canonical_ranks();
    std::sort(candidates.begin(), candidates.end(),
              [&](int x, int y) { return ranks[x] < ranks[y]; });
    for (int v : candidates) {
      if (steps_ >= budget_) return;
      if (!consistent(frontier, v)) continue;
      ++steps_;
      assign(frontier, v);
      extend(size + 1);
      unassign(frontier, v);
      if (bound(size) <= best_) return;
    }

    excluded_[frontier] = 1;
    --avail_a_[label];
    extend(size);
    ++avail_a_[label];
    excluded_[frontier] = 0;
  }

  const Molecule& a_;
  const Molecule& b_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::size_t best_ = 0;
  std::vector<int> map_a_;
  std::vector<int> map_b_;
  std::vector<char> excluded_;
  std::vector<int> mapped_;
  std::vector<int> order_a_;
  std::vector<int> order_b_;
  std::vector<int> avail_a_ = std::vector<int>(kLabels, 0);
  std::vector<int> avail_b_ = std::vector<int>(kLabels, 0);
  std::vector<int> labels_;
};

}  // namespace

std::size_t mcs_atoms(const Molecule& a, const Molecule& b, std::size_t budget) {
  if (a.canonical_key() == b.canonical_key()) return a.atom_count();
  const bool swap = b.atom_count() < a.atom_count() ||
                    (b.atom_count() == a.atom_count() && b.canonical_key() < a.canonical_key());
  return swap ? McsSearch(b, a, budget).run() : McsSearch(a, b, budget).run();
}

double fms(const Molecule& a, const Molecule& b, std::size_t budget) {
  const double common = static_cast<double>(mcs_atoms(a, b, budget));
  const double total = static_cast<double>(a.atom_count() + b.atom_count()) - common;
  return total > 0 ? common / total : 1.0;
}

}  // namespace tango
