//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "retroharness/chem/molecule.hpp"

namespace rh {

/// Whether pattern atom `p` may map onto target atom `t`.
inline bool atom_matches(const Atom &p, const Atom &t) {
  switch (p.kind) {
  case AtomKind::kWildcard:
    return true;
  case AtomKind::kElementList:
    if (t.kind != AtomKind::kElement) return false;
    return std::any_of(p.element_list.begin(), p.element_list.end(),
                       [&](const ListedElement &e) { return e.symbol == t.element; });
  case AtomKind::kElement:
    break;
  }
  if (t.kind != AtomKind::kElement) return false;
  if (p.element != t.element || p.aromatic != t.aromatic) return false;
  return p.charge == 0 || p.charge == t.charge;
}

namespace internal {

class SubstructureSearch {
public:
  SubstructureSearch(const Molecule &pattern, const Molecule &target)
      : p_(pattern), t_(target), map_(pattern.num_atoms(), -1),
        used_(target.num_atoms(), false) {
    order_ = search_order();
  }

  std::optional<std::vector<int>> run() {
    if (p_.num_atoms() > t_.num_atoms() || p_.num_bonds() > t_.num_bonds())
      return std::nullopt;
    if (extend(0)) return map_;
    return std::nullopt;
  }

private:
  // BFS per component, each component seeded by its highest-degree atom, so
  // every atom after a seed has an already-mapped neighbor to anchor on.
  std::vector<int> search_order() const {
    std::vector<int> order;
    std::vector<bool> seen(p_.num_atoms(), false);
    while (static_cast<int>(order.size()) < p_.num_atoms()) {
      int seed = -1;
      for (int a = 0; a < p_.num_atoms(); ++a)
        if (!seen[a] && (seed < 0 || p_.degree(a) > p_.degree(seed))) seed = a;
      seen[seed] = true;
      std::size_t head = order.size();
      order.push_back(seed);
      while (head < order.size()) {
        const int a = order[head++];
        for (const auto &nb: p_.neighbors(a))
          if (!seen[nb.atom]) {
            seen[nb.atom] = true;
            order.push_back(nb.atom);
          }
      }
    }
    return order;
  }

  bool feasible(int p, int t) const {
    if (used_[t] || p_.degree(p) > t_.degree(t)) return false;
    if (!atom_matches(p_.atom(p), t_.atom(t))) return false;
    for (const auto &nb: p_.neighbors(p)) {
      const int mapped = map_[nb.atom];
      if (mapped < 0) continue;
      const auto tb = t_.bond_between(t, mapped);
      if (!tb || t_.bond(*tb).kind != p_.bond(nb.bond).kind) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const int p = order_[depth];

    // Anchor on a mapped neighbor when there is one.
    int anchor = -1;
    for (const auto &nb: p_.neighbors(p))
      if (map_[nb.atom] >= 0) {
        anchor = map_[nb.atom];
        break;
      }

    auto attempt = [&](int t) {
      if (!feasible(p, t)) return false;
      map_[p] = t;
      used_[t] = true;
      if (extend(depth + 1)) return true;
      map_[p] = -1;
      used_[t] = false;
      return false;
    };

    if (anchor >= 0) {
      for (const auto &nb: t_.neighbors(anchor))
        if (attempt(nb.atom)) return true;
    } else {
      for (int t = 0; t < t_.num_atoms(); ++t)
        if (attempt(t)) return true;
    }
    return false;
  }

  const Molecule &p_;
  const Molecule &t_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<bool> used_;
};

}  // namespace internal

/// An injective pattern->target atom mapping under which every pattern bond
/// lands on a target bond of the same kind (extra target bonds allowed).
inline std::optional<std::vector<int>> find_substructure(const Molecule &pattern,
                                                         const Molecule &target) {
  return internal::SubstructureSearch(pattern, target).run();
}

inline bool substructure_match(const Molecule &pattern, const Molecule &target) {
  return find_substructure(pattern, target).has_value();
}

}  // namespace rh
