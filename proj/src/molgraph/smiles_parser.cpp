#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "tango/molgraph.hpp"

namespace tango {
namespace {

constexpr int kMaxCharge = 15;
constexpr int kMaxHydrogens = 8;

struct PendingRing {
  int atom = -1;
  std::optional<BondOrder> order;
  std::size_t offset = 0;
};

class SmilesParser {
 public:
  explicit SmilesParser(std::string_view text) : text_(text) {}

  Molecule parse() {
    if (text_.empty()) throw ParseError("empty SMILES", 0);
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '(') {
        if (prev_ < 0) fail("branch without preceding atom");
        if (pending_bond_) fail("bond before branch");
        branches_.push_back({prev_, pos_});
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == ')') fail("empty branch");
      } else if (ch == ')') {
        if (branches_.empty()) fail("unbalanced ')'");
        if (pending_bond_) fail("bond without following atom");
        prev_ = branches_.back().first;
        branches_.pop_back();
        ++pos_;
      } else if (ch == '.') {
        if (prev_ < 0 || pending_bond_) fail("misplaced '.'");
        if (!branches_.empty()) fail("'.' inside branch");
        prev_ = -1;
        ++pos_;
      } else if (is_bond_char(ch)) {
        if (prev_ < 0 || pending_bond_) fail("misplaced bond");
        pending_bond_ = bond_from_char(ch);
        pending_bond_offset_ = pos_;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '%') {
        ring_closure();
      } else {
        atom();
      }
    }
    if (!branches_.empty()) throw ParseError("unclosed branch", branches_.back().second);
    if (pending_bond_) throw ParseError("bond without following atom", pending_bond_offset_);
    for (std::size_t d = 0; d < rings_.size(); ++d) {
      if (rings_[d].atom >= 0) throw ParseError("unmatched ring bond", rings_[d].offset);
    }
    assign_implicit_hydrogens();
    return Molecule(std::move(atoms_), std::move(bonds_));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  static bool is_bond_char(char ch) {
    return ch == '-' || ch == '=' || ch == '#' || ch == ':' || ch == '/' || ch == '\\' || ch == '$';
  }

  BondOrder bond_from_char(char ch) const {
    switch (ch) {
      case '=': return BondOrder::double_;
      case '#': return BondOrder::triple;
      case ':': return BondOrder::aromatic;
      case '$': fail("quadruple bonds are not supported");
      default: return BondOrder::single;  // '-', and '/' '\' with stereo dropped
    }
  }

  BondOrder implicit_order(int a, int b) const {
    return atoms_[a].aromatic && atoms_[b].aromatic ? BondOrder::aromatic : BondOrder::single;
  }

  void add_bond(int a, int b, BondOrder order, std::size_t offset) {
    if (a == b) throw ParseError("ring bond to itself", offset);
    for (const Bond& existing : bonds_) {
      if ((existing.begin == a && existing.end == b) || (existing.begin == b && existing.end == a)) {
        throw ParseError("duplicate bond", offset);
      }
    }
    bonds_.push_back({a, b, order});
  }

  void ring_closure() {
    const std::size_t start = pos_;
    if (prev_ < 0) fail("ring bond without preceding atom");
    int digit = 0;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
        fail("malformed %nn ring bond");
      }
      digit = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      digit = text_[pos_] - '0';
      ++pos_;
    }
    std::optional<BondOrder> order = pending_bond_;
    pending_bond_.reset();
    PendingRing& ring = rings_[digit];
    if (ring.atom < 0) {
      ring = {prev_, order, start};
      return;
    }
    if (order && ring.order && *order != *ring.order) {
      throw ParseError("conflicting ring bond orders", start);
    }
    const BondOrder resolved =
        order ? *order : (ring.order ? *ring.order : implicit_order(ring.atom, prev_));
    add_bond(ring.atom, prev_, resolved, start);
    ring = PendingRing{};
  }

  void atom() {
    const std::size_t start = pos_;
    Atom a;
    bool bracket = false;
    const char ch = text_[pos_];
    if (ch == '[') {
      bracket = true;
      a = bracket_atom();
    } else if (ch == '*') {
      a.element = 0;
      ++pos_;
    } else {
      a = organic_atom();
    }
    const int index = static_cast<int>(atoms_.size());
    atoms_.push_back(a);
    bracketed_.push_back(bracket);
    if (prev_ >= 0) {
      const BondOrder order = pending_bond_ ? *pending_bond_ : implicit_order(prev_, index);
      add_bond(prev_, index, order, start);
    }
    pending_bond_.reset();
    prev_ = index;
  }

  Atom organic_atom() {
    Atom a;
    const auto rest = text_.substr(pos_);
    auto take = [&](std::string_view sym, int element, bool aromatic) {
      if (rest.substr(0, sym.size()) != sym) return false;
      a.element = element;
      a.aromatic = aromatic;
      pos_ += sym.size();
      return true;
    };
    if (take("Cl", 17, false) || take("Br", 35, false) || take("B", 5, false) ||
        take("C", 6, false) || take("N", 7, false) || take("O", 8, false) ||
        take("P", 15, false) || take("S", 16, false) || take("F", 9, false) ||
        take("I", 53, false) || take("b", 5, true) || take("c", 6, true) ||
        take("n", 7, true) || take("o", 8, true) || take("p", 15, true) ||
        take("s", 16, true)) {
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(text_[pos_]))) fail("unknown element");
    fail(std::string("unexpected character '") + text_[pos_] + "'");
  }

  int read_number() {
    int value = 0;
    int digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (++digits > 4) fail("number too long");
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return digits == 0 ? -1 : value;
  }

  Atom bracket_atom() {
    ++pos_;  // '['
    Atom a;
    a.hydrogens = 0;
    if (pos_ >= text_.size()) fail("unclosed bracket atom");
    const int isotope = read_number();
    if (isotope == 0) fail("isotope must be positive");
    a.isotope = isotope > 0 ? isotope : 0;

    if (pos_ >= text_.size()) fail("unclosed bracket atom");
    if (text_[pos_] == '*') {
      a.element = 0;
      ++pos_;
    } else if (std::isupper(static_cast<unsigned char>(text_[pos_]))) {
      a.element = -1;
      if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        a.element = element_number(text_.substr(pos_, 2));
        if (a.element >= 0) pos_ += 2;
      }
      if (a.element < 0) {
        a.element = element_number(text_.substr(pos_, 1));
        if (a.element < 0) fail("unknown element");
        ++pos_;
      }
    } else if (std::islower(static_cast<unsigned char>(text_[pos_]))) {
      a.aromatic = true;
      auto capitalized = [&](std::size_t len) {
        std::string s(text_.substr(pos_, len));
        s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
        return element_number(s);
      };
      a.element = -1;
      if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        a.element = capitalized(2);
        if (a.element >= 0) pos_ += 2;
      }
      if (a.element < 0) {
        a.element = capitalized(1);
        if (a.element <= 1) fail("unknown aromatic element");
        ++pos_;
      }
    } else {
      fail("missing element in bracket atom");
    }

    // Chirality is accepted and dropped.
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '@') {
        ++pos_;
      } else {
        static constexpr std::array<std::string_view, 5> kClasses = {"TH", "AL", "SP", "TB", "OH"};
        for (auto cls : kClasses) {
          if (text_.substr(pos_, 2) == cls) {
            pos_ += 2;
            if (read_number() < 0) fail("chirality class without number");
            break;
          }
        }
      }
    }

    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      const int h = read_number();
      a.hydrogens = h < 0 ? 1 : h;
      if (a.hydrogens > kMaxHydrogens) fail("too many hydrogens");
    }

    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign = text_[pos_];
      ++pos_;
      int magnitude = 1;
      const int n = read_number();
      if (n >= 0) {
        magnitude = n;
      } else {
        while (pos_ < text_.size() && text_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      if (magnitude > kMaxCharge) fail("invalid charge");
      a.formal_charge = sign == '+' ? magnitude : -magnitude;
    }

    // Atom class is accepted and dropped.
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      if (read_number() < 0) fail("atom class without number");
    }

    if (pos_ >= text_.size() || text_[pos_] != ']') fail("unclosed bracket atom");
    ++pos_;
    return a;
  }

  void assign_implicit_hydrogens() {
    std::vector<int> order_sum(atoms_.size(), 0);
    std::vector<char> has_aromatic(atoms_.size(), 0);
    for (const Bond& b : bonds_) {
      const int v = b.order == BondOrder::aromatic ? 1 : static_cast<int>(b.order);
      order_sum[b.begin] += v;
      order_sum[b.end] += v;
      if (b.order == BondOrder::aromatic) has_aromatic[b.begin] = has_aromatic[b.end] = 1;
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (bracketed_[i] || atoms_[i].element == 0) continue;
      const int h = implicit_hydrogens(atoms_[i].element, atoms_[i].aromatic, order_sum[i],
                                       has_aromatic[i] != 0);
      atoms_[i].hydrogens = std::max(h, 0);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int prev_ = -1;
  std::optional<BondOrder> pending_bond_;
  std::size_t pending_bond_offset_ = 0;
  std::vector<std::pair<int, std::size_t>> branches_;
  std::array<PendingRing, 100> rings_{};
  std::vector<Atom> atoms_;
  std::vector<char> bracketed_;
  std::vector<Bond> bonds_;
};

}  // namespace

Molecule parse_smiles(std::string_view text) { return SmilesParser(text).parse(); }

}  // namespace tango
