#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "tango/simil.hpp"

namespace tango {
namespace {

// Fixed mixing so identifiers do not depend on the standard library's hash.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t seed, std::uint64_t value) { return mix(seed ^ mix(value)); }

}  // namespace

Fingerprint::Fingerprint(int width, int radius) : width_(width), radius_(radius) {
  if (width < 64 || !std::has_single_bit(static_cast<unsigned>(width))) {
    throw std::invalid_argument("fingerprint width must be a power of two >= 64");
  }
  if (radius < 0) throw std::invalid_argument("fingerprint radius must be non-negative");
  words_.assign(static_cast<std::size_t>(width) / 64, 0);
}

std::size_t Fingerprint::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Fingerprint morgan_fingerprint(const Molecule& mol, int radius, int width) {
  Fingerprint fp(width, radius);
  const std::size_t n = mol.atom_count();
  const std::size_t nbonds = mol.bond_count();
  const auto ring = mol.ring_bonds();
  const std::uint64_t mask = static_cast<std::uint64_t>(width) - 1;

  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = mol.atom(i);
    bool in_ring = false;
    for (const auto& nb : mol.neighbors(i)) in_ring = in_ring || ring[nb.bond];
    std::uint64_t h = mix(static_cast<std::uint64_t>(a.element));
    h = combine(h, mol.degree(i));
    h = combine(h, static_cast<std::uint64_t>(a.hydrogens));
    h = combine(h, static_cast<std::uint64_t>(a.formal_charge + 64));
    h = combine(h, a.aromatic ? 1 : 0);
    h = combine(h, static_cast<std::uint64_t>(a.isotope));
    h = combine(h, in_ring ? 1 : 0);
    ids[i] = h;
    fp.set(h & mask);
  }

  // Bond set covered by each atom's environment at the current radius.
  std::vector<std::vector<bool>> cover(n, std::vector<bool>(nbonds, false));
  std::vector<bool> growing(n, true);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> env;
  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next(n);
    std::vector<std::vector<bool>> next_cover = cover;
    for (std::size_t i = 0; i < n; ++i) {
      env.clear();
      for (const auto& nb : mol.neighbors(i)) {
        env.emplace_back(static_cast<std::uint64_t>(mol.bond(nb.bond).order), ids[nb.atom]);
        next_cover[i][nb.bond] = true;
        for (std::size_t b = 0; b < nbonds; ++b) {
          if (cover[nb.atom][b]) next_cover[i][b] = true;
        }
      }
      std::sort(env.begin(), env.end());
      std::uint64_t h = combine(mix(static_cast<std::uint64_t>(r)), ids[i]);
      for (const auto& [order, id] : env) h = combine(combine(h, order), id);
      next[i] = h;
      if (growing[i] && next_cover[i] != cover[i]) {
        fp.set(h & mask);
      } else {
        growing[i] = false;
      }
    }
    ids.swap(next);
    cover.swap(next_cover);
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.width() != b.width()) throw std::invalid_argument("fingerprint width mismatch");
  std::size_t both = 0;
  std::size_t either = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    both += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
    either += static_cast<std::size_t>(std::popcount(wa[i] | wb[i]));
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace tango
