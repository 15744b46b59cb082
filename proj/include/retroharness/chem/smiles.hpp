//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "retroharness/chem/element.hpp"
#include "retroharness/chem/molecule.hpp"

namespace rh {

class SmilesError: public std::runtime_error {
public:
  SmilesError(std::size_t position, const std::string &reason)
      : std::runtime_error("SMILES error at position " + std::to_string(position) +
                           ": " + reason),
        position_(position), reason_(reason) { }

  std::size_t position() const { return position_; }
  const std::string &reason() const { return reason_; }

private:
  std::size_t position_;
  std::string reason_;
};

namespace internal {

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text): s_(text) { }

  Molecule parse() {
    if (s_.empty()) fail(0, "empty SMILES");

    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      switch (c) {
      case '(':
        open_branch();
        break;
      case ')':
        close_branch();
        break;
      case '.':
        if (pending_) fail(pos_, "bond before '.'");
        if (!branches_.empty()) fail(pos_, "'.' inside a branch");
        if (prev_ < 0) fail(pos_, "'.' without a preceding atom");
        prev_ = -1;
        ++pos_;
        break;
      case '-':
      case '=':
      case '#':
      case ':':
      case '/':
      case '\\':
      case '$':
        read_bond();
        break;
      case '%':
      case '0':
      case '1':
      case '2':
      case '3':
      case '4':
      case '5':
      case '6':
      case '7':
      case '8':
      case '9':
        read_ring_closure();
        break;
      case '[':
        read_bracket_atom();
        break;
      default:
        read_organic_atom();
        break;
      }
    }

    if (pending_) fail(pending_->pos, "dangling bond at end of input");
    if (!branches_.empty()) fail(branches_.back().second, "unclosed branch");
    if (!rings_.empty()) {
      const auto &[digit, open] = *rings_.begin();
      fail(open.pos, "unclosed ring bond " + std::to_string(digit));
    }

    std::vector<Bond> bonds;
    bonds.reserve(bonds_.size());
    for (const auto &pb: bonds_) bonds.push_back(pb.bond);
    // An unwritten bond between aromatic atoms is aromatic only inside a
    // ring; a chain bond such as the biphenyl link is single.
    const auto ring = ring_bond_flags(Molecule(atoms_, bonds));
    for (std::size_t b = 0; b < bonds.size(); ++b) {
      if (bonds_[b].implicit && bonds[b].kind == BondKind::kAromatic && !ring[b])
        bonds[b].kind = BondKind::kSingle;
    }
    Molecule draft(atoms_, bonds);
    for (int i = 0; i < draft.num_atoms(); ++i)
      if (!bracketed_[i]) atoms_[i].implicit_h = organic_implicit_h(draft, i);
    return Molecule(std::move(atoms_), std::move(bonds), std::string(s_));
  }

private:
  struct PendingBond {
    BondKind kind;
    BondStereo stereo;
    std::size_t pos;
  };

  struct OpenRing {
    int atom;
    std::optional<PendingBond> bond;
    std::size_t pos;
  };

  struct ParsedBond {
    Bond bond;
    bool implicit;  // no bond symbol was written
  };

  [[noreturn]] void fail(std::size_t pos, const std::string &why) const {
    throw SmilesError(pos, why);
  }

  void open_branch() {
    if (prev_ < 0) fail(pos_, "branch without a preceding atom");
    if (pending_) fail(pos_, "bond before '('");
    if (pos_ + 1 < s_.size() && s_[pos_ + 1] == ')') fail(pos_, "empty branch");
    branches_.emplace_back(prev_, pos_);
    ++pos_;
  }

  void close_branch() {
    if (branches_.empty()) fail(pos_, "unbalanced ')'");
    if (pending_) fail(pos_, "dangling bond before ')'");
    prev_ = branches_.back().first;
    branches_.pop_back();
    ++pos_;
  }

  void read_bond() {
    if (pending_) fail(pos_, "consecutive bond symbols");
    if (prev_ < 0) fail(pos_, "bond without a preceding atom");
    PendingBond b{BondKind::kSingle, BondStereo::kNone, pos_};
    switch (s_[pos_]) {
    case '-':
      break;
    case '=':
      b.kind = BondKind::kDouble;
      break;
    case '#':
      b.kind = BondKind::kTriple;
      break;
    case ':':
      b.kind = BondKind::kAromatic;
      break;
    case '/':
      b.stereo = BondStereo::kUp;
      break;
    case '\\':
      b.stereo = BondStereo::kDown;
      break;
    default:
      fail(pos_, "quadruple bonds are not supported");
    }
    pending_ = b;
    ++pos_;
  }

  BondKind default_kind(int a, int b) const {
    return atoms_[a].aromatic && atoms_[b].aromatic ? BondKind::kAromatic
                                                    : BondKind::kSingle;
  }

  void add_bond(int a, int b, const std::optional<PendingBond> &pb, std::size_t at) {
    if (a == b) fail(at, "ring bond from an atom to itself");
    if (!pairs_.emplace(std::minmax(a, b)).second)
      fail(at, "duplicate bond between the same pair of atoms");
    Bond bond{a, b, default_kind(a, b), BondStereo::kNone};
    if (pb) {
      bond.kind = pb->kind;
      bond.stereo = pb->stereo;
    }
    bonds_.push_back({bond, !pb});
  }

  void read_ring_closure() {
    const std::size_t start = pos_;
    if (prev_ < 0) fail(pos_, "ring bond without a preceding atom");
    int digit = 0;
    if (s_[pos_] == '%') {
      if (pos_ + 2 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))
        fail(pos_, "'%' must be followed by two digits");
      digit = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      digit = s_[pos_] - '0';
      ++pos_;
    }

    auto it = rings_.find(digit);
    if (it == rings_.end()) {
      rings_.emplace(digit, OpenRing{prev_, pending_, start});
      pending_.reset();
      return;
    }

    const OpenRing open = it->second;
    rings_.erase(it);
    std::optional<PendingBond> bond = open.bond;
    if (pending_) {
      if (bond && (bond->kind != pending_->kind || bond->stereo != pending_->stereo))
        fail(start, "conflicting bond symbols on ring bond " + std::to_string(digit));
      bond = pending_;
    }
    pending_.reset();
    // Ring bonds are oriented opening atom -> closing atom.
    add_bond(open.atom, prev_, bond, start);
  }

  void attach(int idx, bool bracketed) {
    bracketed_.push_back(bracketed);
    if (prev_ >= 0) {
      add_bond(prev_, idx, pending_, pos_);
    } else if (pending_) {
      fail(pending_->pos, "bond without a preceding atom");
    }
    pending_.reset();
    prev_ = idx;
  }

  void read_organic_atom() {
    Atom atom;
    const char c = s_[pos_];
    if (c == '*') {
      atom.kind = AtomKind::kWildcard;
      atom.element = "*";
      ++pos_;
    } else if (c == 'C' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'l') {
      atom.element = "Cl";
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'r') {
      atom.element = "Br";
      pos_ += 2;
    } else if (std::string_view("BCNOPSFI").find(c) != std::string_view::npos) {
      atom.element = std::string(1, c);
      ++pos_;
    } else if (std::string_view("bcnops").find(c) != std::string_view::npos) {
      atom.element = std::string(1, static_cast<char>(std::toupper(c)));
      atom.aromatic = true;
      ++pos_;
    } else {
      fail(pos_, std::string("unexpected character '") + c + "'");
    }
    const int idx = static_cast<int>(atoms_.size());
    atoms_.push_back(std::move(atom));
    attach(idx, false);
  }

  /// Reads one element symbol inside brackets; returns {symbol, aromatic}.
  ListedElement read_bracket_symbol() {
    if (pos_ >= s_.size()) fail(pos_, "unterminated bracket atom");
    const char c = s_[pos_];
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (pos_ + 1 < s_.size() && std::islower(static_cast<unsigned char>(s_[pos_ + 1]))) {
        const std::string two{c, s_[pos_ + 1]};
        if (is_element_symbol(two)) {
          pos_ += 2;
          return {two, false};
        }
      }
      const std::string one(1, c);
      if (is_element_symbol(one)) {
        ++pos_;
        return {one, false};
      }
      fail(pos_, "unknown element '" + one + "'");
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      if (pos_ + 1 < s_.size()) {
        const std::string two{c, s_[pos_ + 1]};
        if (two == "se" || two == "as" || two == "te") {
          pos_ += 2;
          return {std::string{static_cast<char>(std::toupper(c)), s_[pos_ - 1]}, true};
        }
      }
      if (std::string_view("bcnops").find(c) != std::string_view::npos) {
        ++pos_;
        return {std::string(1, static_cast<char>(std::toupper(c))), true};
      }
      fail(pos_, std::string("unknown aromatic element '") + c + "'");
    }
    fail(pos_, "expected an element symbol");
  }

  int read_uint(std::size_t max_digits) {
    int v = 0;
    std::size_t n = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (++n > max_digits) fail(pos_, "number too long");
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  bool at_digit() const {
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  void read_bracket_atom() {
    const std::size_t open = pos_;
    ++pos_;
    Atom atom;

    if (at_digit()) {
      const int iso = read_uint(4);
      if (iso <= 0) fail(open + 1, "isotope must be positive");
      atom.isotope = iso;
    }

    if (pos_ < s_.size() && s_[pos_] == '*') {
      atom.kind = AtomKind::kWildcard;
      atom.element = "*";
      ++pos_;
    } else {
      ListedElement first = read_bracket_symbol();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        atom.kind = AtomKind::kElementList;
        atom.element_list.push_back(std::move(first));
        while (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          atom.element_list.push_back(read_bracket_symbol());
        }
        atom.aromatic = std::all_of(atom.element_list.begin(), atom.element_list.end(),
                                    [](const ListedElement &e) { return e.aromatic; });
      } else {
        if (first.aromatic && !can_be_aromatic(first.symbol))
          fail(open + 1, "element cannot be aromatic");
        atom.element = std::move(first.symbol);
        atom.aromatic = first.aromatic;
      }
    }

    if (pos_ < s_.size() && s_[pos_] == '@') {
      ++pos_;
      atom.chirality = Chirality::kCCW;
      if (pos_ < s_.size() && s_[pos_] == '@') {
        ++pos_;
        atom.chirality = Chirality::kCW;
      }
      if (pos_ < s_.size() && std::isupper(static_cast<unsigned char>(s_[pos_])) &&
          s_[pos_] != 'H')
        fail(pos_, "only @ and @@ chirality marks are supported");
    }

    if (pos_ < s_.size() && s_[pos_] == 'H') {
      ++pos_;
      atom.implicit_h = at_digit() ? read_uint(1) : 1;
      if (atom.is_query()) fail(pos_, "hydrogen count on a query atom");
    }

    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      const char sign = s_[pos_];
      const std::size_t charge_pos = pos_;
      ++pos_;
      int magnitude = 1;
      if (at_digit()) {
        magnitude = read_uint(2);
        if (magnitude == 0) fail(charge_pos, "zero charge magnitude");
      } else {
        while (pos_ < s_.size() && s_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      if (magnitude > 15) fail(charge_pos, "charge magnitude out of range");
      atom.charge = sign == '+' ? magnitude : -magnitude;
    }

    if (pos_ < s_.size() && s_[pos_] == ':') {
      ++pos_;
      if (!at_digit()) fail(pos_, "atom map must be a number");
      const int map = read_uint(6);
      if (map > 0) atom.atom_map = map;
    }

    if (pos_ >= s_.size() || s_[pos_] != ']')
      fail(pos_ < s_.size() ? pos_ : open, "unterminated or malformed bracket atom");
    ++pos_;

    const int idx = static_cast<int>(atoms_.size());
    atoms_.push_back(std::move(atom));
    attach(idx, true);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int prev_ = -1;
  std::optional<PendingBond> pending_;
  std::vector<std::pair<int, std::size_t>> branches_;
  std::map<int, OpenRing> rings_;
  std::vector<Atom> atoms_;
  std::vector<bool> bracketed_;
  std::vector<ParsedBond> bonds_;
  std::set<std::pair<int, int>> pairs_;
};

inline bool needs_brackets(const Molecule &m, int i, bool include_maps) {
  const Atom &a = m.atom(i);
  if (a.is_element_list()) return true;
  if (a.charge != 0 || a.isotope || a.chirality != Chirality::kNone) return true;
  if (include_maps && a.atom_map) return true;
  if (a.is_wildcard()) return a.implicit_h != 0;
  if (!is_organic_subset(a.element)) return true;
  if (a.aromatic && !is_aromatic_organic(a.element)) return true;
  return organic_implicit_h(m, i) != a.implicit_h;
}

inline void append_atom(std::string &out, const Molecule &m, int i, bool include_maps) {
  const Atom &a = m.atom(i);
  if (!needs_brackets(m, i, include_maps)) {
    out += a.display_symbol();
    return;
  }
  out.push_back('[');
  if (a.isotope) out += std::to_string(*a.isotope);
  if (a.is_element_list()) {
    for (std::size_t k = 0; k < a.element_list.size(); ++k) {
      if (k) out.push_back(',');
      std::string sym = a.element_list[k].symbol;
      if (a.element_list[k].aromatic) sym[0] = static_cast<char>(std::tolower(sym[0]));
      out += sym;
    }
  } else {
    out += a.display_symbol();
  }
  if (a.chirality == Chirality::kCCW) out += "@";
  if (a.chirality == Chirality::kCW) out += "@@";
  if (a.implicit_h > 0) {
    out.push_back('H');
    if (a.implicit_h > 1) out += std::to_string(a.implicit_h);
  }
  if (a.charge != 0) {
    out.push_back(a.charge > 0 ? '+' : '-');
    if (std::abs(a.charge) > 1) out += std::to_string(std::abs(a.charge));
  }
  if (include_maps && a.atom_map) {
    out.push_back(':');
    out += std::to_string(*a.atom_map);
  }
  out.push_back(']');
}

/// Bond text when walking from atom `from` across `bond`.
inline std::string bond_symbol(const Molecule &m, const Bond &bond, int from,
                               bool in_ring) {
  const bool both_aromatic = m.atom(bond.begin).aromatic && m.atom(bond.end).aromatic;
  switch (bond.kind) {
  case BondKind::kSingle:
    switch (bond.stereo_from(from)) {
    case BondStereo::kUp:
      return "/";
    case BondStereo::kDown:
      return "\\";
    default:
      return both_aromatic ? "-" : "";
    }
  case BondKind::kDouble:
    return "=";
  case BondKind::kTriple:
    return "#";
  case BondKind::kAromatic:
    return both_aromatic && in_ring ? "" : ":";
  }
  return "";
}

/// Depth-first SMILES emission where neighbor and start-atom choices follow
/// `rank` (lower first). Also reports the atom output order.
class SmilesEmitter {
public:
  SmilesEmitter(const Molecule &m, std::span<const int> rank, bool include_maps)
      : m_(m), rank_(rank), include_maps_(include_maps), order_pos_(m.num_atoms(), -1),
        parent_bond_(m.num_atoms(), -1), children_(m.num_atoms()),
        ring_bonds_(m.num_atoms()), is_tree_bond_(m.num_bonds(), false),
        in_ring_(ring_bond_flags(m)) { }

  std::string emit() {
    std::vector<int> starts(m_.num_atoms());
    for (int i = 0; i < m_.num_atoms(); ++i) starts[i] = i;
    std::sort(starts.begin(), starts.end(),
              [&](int a, int b) { return rank_[a] < rank_[b]; });

    std::vector<int> roots;
    for (int s: starts) {
      if (order_pos_[s] >= 0) continue;
      roots.push_back(s);
      visit(s);
    }

    // Every non-tree bond closes a ring.
    for (int b = 0; b < m_.num_bonds(); ++b) {
      if (is_tree_bond_[b]) continue;
      ring_bonds_[m_.bond(b).begin].push_back(b);
      ring_bonds_[m_.bond(b).end].push_back(b);
    }

    std::string out;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      if (r) out.push_back('.');
      write(out, roots[r]);
    }
    return out;
  }

  const std::vector<int> &order() const { return order_; }

private:
  std::vector<Neighbor> sorted_neighbors(int a) const {
    std::vector<Neighbor> nbs(m_.neighbors(a).begin(), m_.neighbors(a).end());
    std::sort(nbs.begin(), nbs.end(), [&](const Neighbor &x, const Neighbor &y) {
      return rank_[x.atom] < rank_[y.atom];
    });
    return nbs;
  }

  void visit(int a) {
    order_pos_[a] = static_cast<int>(order_.size());
    order_.push_back(a);
    for (const auto &nb: sorted_neighbors(a)) {
      if (order_pos_[nb.atom] >= 0) continue;
      is_tree_bond_[nb.bond] = true;
      parent_bond_[nb.atom] = nb.bond;
      children_[a].push_back(nb.atom);
      visit(nb.atom);
    }
  }

  int allocate_digit() {
    int d = 1;
    while (used_digits_.count(d)) ++d;
    used_digits_.insert(d);
    return d;
  }

  static std::string digit_text(int d) {
    return d < 10 ? std::to_string(d) : "%" + std::to_string(d);
  }

  void write(std::string &out, int a) {
    append_atom(out, m_, a, include_maps_);

    auto rings = ring_bonds_[a];
    std::sort(rings.begin(), rings.end(), [&](int x, int y) {
      return order_pos_[m_.bond(x).other(a)] < order_pos_[m_.bond(y).other(a)];
    });
    std::vector<int> to_free;
    for (int b: rings) {
      const int partner = m_.bond(b).other(a);
      if (order_pos_[partner] < order_pos_[a]) {
        const int d = ring_digit_.at(b);
        out += digit_text(d);
        to_free.push_back(d);
      } else {
        const int d = allocate_digit();
        ring_digit_[b] = d;
        out += bond_symbol(m_, m_.bond(b), a, in_ring_[b]);
        out += digit_text(d);
      }
    }
    for (int d: to_free) used_digits_.erase(d);

    const auto &kids = children_[a];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const int child = kids[k];
      const bool branch = k + 1 < kids.size();
      if (branch) out.push_back('(');
      const int pb = parent_bond_[child];
      out += bond_symbol(m_, m_.bond(pb), a, in_ring_[pb]);
      write(out, child);
      if (branch) out.push_back(')');
    }
  }

  const Molecule &m_;
  std::span<const int> rank_;
  bool include_maps_;
  std::vector<int> order_;
  std::vector<int> order_pos_;
  std::vector<int> parent_bond_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> ring_bonds_;
  std::vector<bool> is_tree_bond_;
  std::vector<bool> in_ring_;
  std::map<int, int> ring_digit_;
  std::set<int> used_digits_;
};

}  // namespace internal

/// Parses SMILES, including bracket atoms, atom maps, charges, isotopes,
/// ring closures (with %nn), branches, dots, directional bonds, `@`/`@@`,
/// wildcards and bracket element lists. Throws SmilesError.
inline Molecule parse_smiles(std::string_view text) {
  return internal::SmilesParser(text).parse();
}

struct WriteOptions {
  bool include_maps = true;
};

/// SMILES following atom index order for traversal choices.
inline std::string write_smiles(const Molecule &m, WriteOptions opts = {}) {
  std::vector<int> rank(m.num_atoms());
  for (int i = 0; i < m.num_atoms(); ++i) rank[i] = i;
  return internal::SmilesEmitter(m, rank, opts.include_maps).emit();
}

}  // namespace rh
