//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "retroharness/chem/element.hpp"

namespace rh {

enum class AtomKind : std::uint8_t {
  kElement,
  kWildcard,     // [*] or *
  kElementList,  // [F,Cl,Br,I]
};

// Lexical only: '@' and '@@' are carried through but never interpreted.
enum class Chirality : std::uint8_t {
  kNone,
  kCCW,  // @
  kCW,   // @@
};

enum class BondKind : std::uint8_t {
  kSingle,
  kDouble,
  kTriple,
  kAromatic,
};

// Directional single-bond marks, relative to the bond's begin -> end order.
enum class BondStereo : std::uint8_t {
  kNone,
  kUp,    // '/'
  kDown,  // '\'
};

inline BondStereo flip(BondStereo s) {
  switch (s) {
  case BondStereo::kUp:
    return BondStereo::kDown;
  case BondStereo::kDown:
    return BondStereo::kUp;
  default:
    return s;
  }
}

/// Bond order times two, so aromatic bonds (1.5) stay integral.
inline int bond_order_x2(BondKind kind) {
  switch (kind) {
  case BondKind::kSingle:
    return 2;
  case BondKind::kDouble:
    return 4;
  case BondKind::kTriple:
    return 6;
  case BondKind::kAromatic:
    return 3;
  }
  return 2;
}

struct ListedElement {
  std::string symbol;  // capitalized, e.g. "Cl"
  bool aromatic = false;

  auto operator<=>(const ListedElement &) const = default;
};

struct Atom {
  AtomKind kind = AtomKind::kElement;
  std::string element;  // capitalized symbol; "*" for wildcards; empty for lists
  std::vector<ListedElement> element_list;
  bool aromatic = false;
  int charge = 0;
  std::optional<int> isotope;
  int implicit_h = 0;
  std::optional<int> atom_map;
  Chirality chirality = Chirality::kNone;

  bool is_wildcard() const { return kind == AtomKind::kWildcard; }
  bool is_element_list() const { return kind == AtomKind::kElementList; }
  bool is_query() const { return kind != AtomKind::kElement; }

  /// Element symbol as it would appear in SMILES ("c" for aromatic carbon).
  std::string display_symbol() const {
    if (is_wildcard()) return "*";
    std::string s = element;
    if (aromatic && !s.empty())
      s[0] = static_cast<char>(s[0] - 'A' + 'a');
    return s;
  }

  bool operator==(const Atom &) const = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondKind kind = BondKind::kSingle;
  BondStereo stereo = BondStereo::kNone;

  int other(int atom) const { return atom == begin ? end : begin; }

  /// Stereo mark as seen when walking from `from` to the other endpoint.
  BondStereo stereo_from(int from) const {
    return from == begin ? stereo : flip(stereo);
  }

  bool operator==(const Bond &) const = default;
};

struct Neighbor {
  int atom;
  int bond;
};

/// Attributed molecular graph. Immutable once constructed; the constructor
/// enforces the bond invariants (in-range, distinct endpoints, one bond per
/// atom pair).
class Molecule {
public:
  Molecule() = default;

  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds,
           std::string source_text = {})
      : atoms_(std::move(atoms)), bonds_(std::move(bonds)),
        source_(std::move(source_text)), adjacency_(atoms_.size()) {
    const int n = num_atoms();
    std::set<std::pair<int, int>> seen;
    for (int b = 0; b < static_cast<int>(bonds_.size()); ++b) {
      const Bond &bond = bonds_[b];
      if (bond.begin < 0 || bond.begin >= n || bond.end < 0 || bond.end >= n)
        throw std::invalid_argument("bond endpoint out of range");
      if (bond.begin == bond.end)
        throw std::invalid_argument("bond endpoints must be distinct");
      if (!seen.emplace(std::minmax(bond.begin, bond.end)).second)
        throw std::invalid_argument("duplicate bond between atoms " +
                                    std::to_string(bond.begin) + " and " +
                                    std::to_string(bond.end));
      adjacency_[bond.begin].push_back({bond.end, b});
      adjacency_[bond.end].push_back({bond.begin, b});
    }
  }

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  const Atom &atom(int i) const { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  const std::string &source_text() const { return source_; }

  std::span<const Neighbor> neighbors(int atom) const { return adjacency_[atom]; }
  int degree(int atom) const { return static_cast<int>(adjacency_[atom].size()); }

  std::optional<int> bond_between(int a, int b) const {
    for (const auto &nb: adjacency_[a])
      if (nb.atom == b) return nb.bond;
    return std::nullopt;
  }

  /// Connected components, each sorted, ordered by their lowest atom index.
  std::vector<std::vector<int>> components() const {
    std::vector<int> comp(atoms_.size(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < num_atoms(); ++s) {
      if (comp[s] >= 0) continue;
      const int id = static_cast<int>(out.size());
      out.emplace_back();
      std::vector<int> stack{s};
      comp[s] = id;
      while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        out[id].push_back(a);
        for (const auto &nb: adjacency_[a]) {
          if (comp[nb.atom] < 0) {
            comp[nb.atom] = id;
            stack.push_back(nb.atom);
          }
        }
      }
      std::sort(out[id].begin(), out[id].end());
    }
    return out;
  }

  bool is_connected() const { return components().size() <= 1; }

  /// First atom carrying `map`, if any.
  std::optional<int> find_map(int map) const {
    for (int i = 0; i < num_atoms(); ++i)
      if (atoms_[i].atom_map == map) return i;
    return std::nullopt;
  }

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::string source_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// New molecule whose atom i is `m.atom(order[i])`. `order` must be a
/// permutation of a subset of atom indices; bonds leaving the subset are
/// dropped. Bonds are sorted by (min, max) new index; orientation is kept.
inline Molecule reordered(const Molecule &m, std::span<const int> order,
                          std::string source_text = {}) {
  std::vector<int> pos(m.num_atoms(), -1);
  std::vector<Atom> atoms;
  atoms.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[order[i]] = static_cast<int>(i);
    atoms.push_back(m.atom(order[i]));
  }
  std::vector<Bond> bonds;
  for (const Bond &b: m.bonds()) {
    if (pos[b.begin] < 0 || pos[b.end] < 0) continue;
    bonds.push_back({pos[b.begin], pos[b.end], b.kind, b.stereo});
  }
  std::sort(bonds.begin(), bonds.end(), [](const Bond &x, const Bond &y) {
    return std::minmax(x.begin, x.end) < std::minmax(y.begin, y.end);
  });
  return Molecule(std::move(atoms), std::move(bonds), std::move(source_text));
}

/// One molecule per connected component.
inline std::vector<Molecule> split_components(const Molecule &m) {
  std::vector<Molecule> out;
  for (const auto &comp: m.components()) out.push_back(reordered(m, comp));
  return out;
}

inline Molecule strip_maps(const Molecule &m) {
  auto atoms = m.atoms();
  for (auto &a: atoms) a.atom_map.reset();
  return Molecule(std::move(atoms), m.bonds());
}

/// Drops chirality tags and directional bond marks.
inline Molecule strip_stereo(const Molecule &m) {
  auto atoms = m.atoms();
  for (auto &a: atoms) a.chirality = Chirality::kNone;
  auto bonds = m.bonds();
  for (auto &b: bonds) b.stereo = BondStereo::kNone;
  return Molecule(std::move(atoms), std::move(bonds));
}

/// Per bond: true when it lies on a cycle (is not a bridge).
inline std::vector<bool> ring_bond_flags(const Molecule &m) {
  const int n = m.num_atoms();
  std::vector<bool> in_ring(m.num_bonds(), true);
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  int timer = 0;
  // Iterative Tarjan bridge search: frames of (atom, parent bond, next neighbor).
  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto nbs = m.neighbors(f.atom);
      if (f.next < nbs.size()) {
        const Neighbor nb = nbs[f.next++];
        if (nb.bond == f.parent_bond) continue;
        if (disc[nb.atom] >= 0) {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        } else {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({nb.atom, nb.bond, 0});
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame &parent = stack.back();
        low[parent.atom] = std::min(low[parent.atom], low[done.atom]);
        if (low[done.atom] > disc[parent.atom]) in_ring[done.parent_bond] = false;
      }
    }
  }
  return in_ring;
}

/// Twice the bond-order sum around `atom` (aromatic bonds count 1.5).
inline int bond_order_sum_x2(const Molecule &m, int atom) {
  int sum = 0;
  for (const auto &nb: m.neighbors(atom)) sum += bond_order_x2(m.bond(nb.bond).kind);
  return sum;
}

/// Implicit hydrogens an unbracketed organic-subset atom receives. Aliphatic
/// atoms fill up to the smallest default valence that accommodates the bond
/// order sum; aromatic atoms use their lowest default valence against the
/// floored sum (aromatic bonds at 1.5). Zero for anything else.
inline int organic_implicit_h(const Molecule &m, int atom) {
  const Atom &a = m.atom(atom);
  if (a.kind != AtomKind::kElement) return 0;
  const auto valences = default_valences(a.element);
  if (valences.empty()) return 0;
  const int used = bond_order_sum_x2(m, atom) / 2;
  if (a.aromatic) return std::max(0, valences.front() - used);
  for (int v: valences)
    if (v >= used) return v - used;
  return 0;
}

/// Finite set of positive atom-map values (a structural label).
class AtomMapSet {
public:
  AtomMapSet() = default;
  AtomMapSet(std::initializer_list<int> maps): maps_(maps) { }
  template <class It>
  AtomMapSet(It first, It last): maps_(first, last) { }

  void insert(int map) { maps_.insert(map); }
  bool contains(int map) const { return maps_.count(map) != 0; }
  std::size_t size() const { return maps_.size(); }
  bool empty() const { return maps_.empty(); }
  auto begin() const { return maps_.begin(); }
  auto end() const { return maps_.end(); }
  std::vector<int> to_vector() const { return {maps_.begin(), maps_.end()}; }

  std::size_t intersection_size(const AtomMapSet &other) const {
    std::size_t n = 0;
    for (int v: maps_) n += other.contains(v) ? 1 : 0;
    return n;
  }

  std::size_t union_size(const AtomMapSet &other) const {
    return size() + other.size() - intersection_size(other);
  }

  auto operator<=>(const AtomMapSet &) const = default;

private:
  std::set<int> maps_;
};

/// Jaccard similarity; 0 when both sets are empty.
inline double jaccard(const AtomMapSet &a, const AtomMapSet &b) {
  const auto u = a.union_size(b);
  return u == 0 ? 0.0
                : static_cast<double>(a.intersection_size(b)) / static_cast<double>(u);
}

struct MapResolution {
  std::vector<int> atoms;  // graph indices, ascending
  AtomMapSet missing;      // requested maps with no atom
};

inline MapResolution resolve_map_set(const Molecule &m, const AtomMapSet &s) {
  MapResolution out;
  std::map<int, int> index;
  for (int i = 0; i < m.num_atoms(); ++i)
    if (const auto map = m.atom(i).atom_map) index.emplace(*map, i);
  for (int map: s) {
    const auto it = index.find(map);
    if (it == index.end())
      out.missing.insert(map);
    else
      out.atoms.push_back(it->second);
  }
  std::sort(out.atoms.begin(), out.atoms.end());
  return out;
}

inline AtomMapSet map_values(const Molecule &m) {
  AtomMapSet out;
  for (const auto &a: m.atoms())
    if (a.atom_map) out.insert(*a.atom_map);
  return out;
}

enum class MoleculeRole {
  kData,      // dataset molecules: must be chemically concrete
  kTemplate,  // predicted templates: wildcards and element lists allowed
};

/// Semantic checks beyond what the constructor enforces. Empty result means
/// the molecule is valid for `role`.
inline std::vector<std::string> validate(const Molecule &m, MoleculeRole role) {
  std::vector<std::string> issues;
  std::map<int, int> seen_maps;
  for (int i = 0; i < m.num_atoms(); ++i) {
    const Atom &a = m.atom(i);
    if (a.atom_map) {
      if (*a.atom_map < 1)
        issues.push_back("atom " + std::to_string(i) + ": atom map must be >= 1");
      else if (!seen_maps.emplace(*a.atom_map, i).second)
        issues.push_back("duplicate atom map " + std::to_string(*a.atom_map));
    }
    if (a.is_query() && a.implicit_h != 0)
      issues.push_back("atom " + std::to_string(i) +
                       ": query atoms cannot carry hydrogens");
    if (role == MoleculeRole::kData && a.is_element_list())
      issues.push_back("atom " + std::to_string(i) +
                       ": element lists are only allowed in templates");
    if (role == MoleculeRole::kData && a.is_wildcard())
      issues.push_back("atom " + std::to_string(i) +
                       ": wildcards are only allowed in templates");
  }
  return issues;
}

inline bool has_query_atoms(const Molecule &m) {
  return std::any_of(m.atoms().begin(), m.atoms().end(),
                     [](const Atom &a) { return a.is_query(); });
}

}  // namespace rh
