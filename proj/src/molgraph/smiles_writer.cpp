#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "canonical.hpp"
#include "tango/molgraph.hpp"

namespace tango {
namespace detail {
namespace {

bool is_organic_symbol(int element) {
  switch (element) {
    case 5: case 6: case 7: case 8: case 9: case 15: case 16: case 17: case 35: case 53:
      return true;
    default:
      return false;
  }
}

void append_atom(const Molecule& mol, int a, std::string& out) {
  const Atom& atom = mol.atom(a);
  int order_sum = 0;
  bool has_aromatic = false;
  for (const auto& nb : mol.neighbors(a)) {
    const BondOrder o = mol.bond(nb.bond).order;
    if (o == BondOrder::aromatic) {
      has_aromatic = true;
      order_sum += 1;
    } else {
      order_sum += static_cast<int>(o);
    }
  }
  std::string symbol(element_symbol(atom.element));
  if (atom.aromatic) {
    for (char& ch : symbol) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  const bool plain = atom.formal_charge == 0 && atom.isotope == 0;
  if (plain && atom.element == 0 && atom.hydrogens == 0) {
    out += '*';
    return;
  }
  if (plain && is_organic_symbol(atom.element) &&
      implicit_hydrogens(atom.element, atom.aromatic, order_sum, has_aromatic) == atom.hydrogens) {
    out += symbol;
    return;
  }
  out += '[';
  if (atom.isotope > 0) out += std::to_string(atom.isotope);
  out += symbol;
  if (atom.hydrogens > 0) {
    out += 'H';
    if (atom.hydrogens > 1) out += std::to_string(atom.hydrogens);
  }
  if (atom.formal_charge != 0) {
    out += atom.formal_charge > 0 ? '+' : '-';
    const int mag = std::abs(atom.formal_charge);
    if (mag > 1) out += std::to_string(mag);
  }
  out += ']';
}

void append_bond(const Molecule& mol, int bond, std::string& out) {
  const Bond& b = mol.bond(bond);
  const bool both_aromatic = mol.atom(b.begin).aromatic && mol.atom(b.end).aromatic;
  switch (b.order) {
    case BondOrder::single:
      if (both_aromatic) out += '-';
      break;
    case BondOrder::double_: out += '='; break;
    case BondOrder::triple: out += '#'; break;
    case BondOrder::aromatic:
      if (!both_aromatic) out += ':';
      break;
  }
}

void append_ring_digit(int digit, std::string& out) {
  if (digit < 10) {
    out += static_cast<char>('0' + digit);
  } else {
    out += '%';
    out += std::to_string(digit);
  }
}

}  // namespace

void write_component(const Molecule& mol, std::span<const int> priority, int start,
                     std::vector<char>& visited, std::string& out) {
  const std::size_t n = mol.atom_count();
  struct RingEnd {
    int bond;
    bool opening;
  };
  std::vector<std::vector<int>> children(n);
  std::vector<std::vector<RingEnd>> rings(n);
  std::vector<char> bond_seen(mol.bond_count(), 0);
  std::vector<int> parent_bond(n, -1);
  std::vector<Molecule::Neighbor> nbs;

  auto sorted_neighbors = [&](int a) {
    auto span = mol.neighbors(a);
    std::vector<Molecule::Neighbor> v(span.begin(), span.end());
    std::sort(v.begin(), v.end(), [&](const auto& x, const auto& y) {
      return priority[x.atom] < priority[y.atom];
    });
    return v;
  };

  // First pass classifies tree edges and ring-closure edges.
  auto classify = [&](auto&& self, int a) -> void {
    visited[a] = 1;
    for (const auto& nb : sorted_neighbors(a)) {
      if (bond_seen[nb.bond]) continue;
      bond_seen[nb.bond] = 1;
      if (visited[nb.atom]) {
        rings[nb.atom].push_back({nb.bond, true});
        rings[a].push_back({nb.bond, false});
      } else {
        children[a].push_back(nb.atom);
        parent_bond[nb.atom] = nb.bond;
        self(self, nb.atom);
      }
    }
  };
  classify(classify, start);

  std::vector<int> digit_of_bond(mol.bond_count(), 0);
  std::vector<char> digit_used(100, 0);

  auto emit = [&](auto&& self, int a) -> void {
    append_atom(mol, a, out);
    std::vector<int> freed;
    for (const RingEnd& r : rings[a]) {
      if (r.opening) continue;
      append_ring_digit(digit_of_bond[r.bond], out);
      freed.push_back(digit_of_bond[r.bond]);
    }
    for (const RingEnd& r : rings[a]) {
      if (!r.opening) continue;
      int d = 1;
      while (d < 100 && digit_used[d]) ++d;
      if (d == 100) throw std::runtime_error("too many open ring closures");
      digit_used[d] = 1;
      digit_of_bond[r.bond] = d;
      append_bond(mol, r.bond, out);
      append_ring_digit(d, out);
    }
    for (int d : freed) digit_used[d] = 0;
    const auto& ch = children[a];
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const bool branch = i + 1 < ch.size();
      if (branch) out += '(';
      append_bond(mol, parent_bond[ch[i]], out);
      self(self, ch[i]);
      if (branch) out += ')';
    }
  };
  emit(emit, start);
}

}  // namespace detail

std::string write_smiles(const Molecule& mol, std::span<const int> priority) {
  const std::size_t n = mol.atom_count();
  if (priority.size() != n) throw std::invalid_argument("priority size mismatch");
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return priority[x] < priority[y]; });
  std::vector<char> visited(n, 0);
  std::string out;
  for (int a : order) {
    if (visited[a]) continue;
    if (!out.empty()) out += '.';
    detail::write_component(mol, priority, a, visited, out);
  }
  return out;
}

}  // namespace tango
