//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "retroharness/chem/molecule.hpp"
#include "retroharness/chem/smiles.hpp"

namespace rh {

/// Rewrites 6-rings of C/N atoms whose bonds alternate single/double into
/// aromatic atoms and bonds. Bonds that are already aromatic may stand in for
/// either order, and the pass repeats until nothing changes, so a kekulized
/// fused system (naphthalene) converts ring by ring.
inline Molecule normalize_benzene_rings(const Molecule &m) {
  const int n = m.num_atoms();
  auto eligible = [&](int a) {
    const Atom &at = m.atom(a);
    return at.kind == AtomKind::kElement && (at.element == "C" || at.element == "N");
  };

  // All 6-cycles of eligible atoms, as bond lists, each found once.
  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  std::vector<int> path_bonds;
  std::vector<bool> on_path(n, false);
  std::set<std::vector<int>> seen;
  auto extend = [&](auto &self, int start, int a) -> void {
    for (const auto &nb: m.neighbors(a)) {
      if (nb.atom == start && path.size() == 6) {
        path_bonds.push_back(nb.bond);
        std::vector<int> key = path_bonds;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) cycles.push_back(path_bonds);
        path_bonds.pop_back();
        continue;
      }
      if (path.size() >= 6 || on_path[nb.atom] || nb.atom < start || !eligible(nb.atom))
        continue;
      on_path[nb.atom] = true;
      path.push_back(nb.atom);
      path_bonds.push_back(nb.bond);
      self(self, start, nb.atom);
      path_bonds.pop_back();
      path.pop_back();
      on_path[nb.atom] = false;
    }
  };
  for (int s = 0; s < n; ++s) {
    if (!eligible(s)) continue;
    on_path[s] = true;
    path = {s};
    extend(extend, s, s);
    on_path[s] = false;
  }
  if (cycles.empty()) return m;

  auto bonds = m.bonds();
  std::vector<bool> converted(bonds.size(), false);
  auto fits_phase = [&](const std::vector<int> &cycle, int phase) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const BondKind k = bonds[cycle[i]].kind;
      if (k == BondKind::kAromatic) continue;
      const BondKind want = (i % 2 == static_cast<std::size_t>(phase)) ? BondKind::kDouble
                                                                       : BondKind::kSingle;
      if (k != want) return false;
    }
    return true;
  };

  bool changed = true;
  bool any = false;
  while (changed) {
    changed = false;
    for (const auto &cycle: cycles) {
      const bool pending = std::any_of(cycle.begin(), cycle.end(), [&](int b) {
        return bonds[b].kind != BondKind::kAromatic;
      });
      if (!pending || !(fits_phase(cycle, 0) || fits_phase(cycle, 1))) continue;
      for (int b: cycle) {
        bonds[b].kind = BondKind::kAromatic;
        bonds[b].stereo = BondStereo::kNone;
        converted[b] = true;
      }
      changed = any = true;
    }
  }
  if (!any) return m;

  auto atoms = m.atoms();
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    if (!converted[b]) continue;
    atoms[bonds[b].begin].aromatic = true;
    atoms[bonds[b].end].aromatic = true;
  }
  return Molecule(std::move(atoms), std::move(bonds), m.source_text());
}

namespace internal {

template <class Key>
std::vector<int> dense_ranks(const std::vector<Key> &keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) -
                              sorted.begin());
  return out;
}

inline int count_classes(const std::vector<int> &ranks) {
  return static_cast<int>(std::set<int>(ranks.begin(), ranks.end()).size());
}

/// Iterates neighbor-multiset refinement until the partition stops splitting.
inline std::vector<int> refine(const Molecule &m, std::vector<int> ranks) {
  using NbKey = std::tuple<int, int, int>;
  int classes = count_classes(ranks);
  while (true) {
    std::vector<std::pair<int, std::vector<NbKey>>> keys(m.num_atoms());
    for (int a = 0; a < m.num_atoms(); ++a) {
      keys[a].first = ranks[a];
      for (const auto &nb: m.neighbors(a)) {
        const Bond &b = m.bond(nb.bond);
        keys[a].second.emplace_back(ranks[nb.atom], static_cast<int>(b.kind),
                                    static_cast<int>(b.stereo_from(a)));
      }
      std::sort(keys[a].second.begin(), keys[a].second.end());
    }
    auto next = dense_ranks(keys);
    const int next_classes = count_classes(next);
    ranks = std::move(next);
    if (next_classes == classes) return ranks;
    classes = next_classes;
  }
}

}  // namespace internal

/// Canonical rank per atom (0-based, all distinct). Input-order independent
/// up to graph automorphism.
inline std::vector<int> canonical_ranks(const Molecule &m, bool include_maps = true) {
  using Initial = std::tuple<int, std::string, std::vector<ListedElement>, bool, int, int,
                             int, int, int, int>;
  std::vector<Initial> init(m.num_atoms());
  for (int a = 0; a < m.num_atoms(); ++a) {
    const Atom &at = m.atom(a);
    init[a] = {static_cast<int>(at.kind),
               at.element,
               at.element_list,
               at.aromatic,
               at.charge,
               at.isotope.value_or(0),
               at.implicit_h,
               m.degree(a),
               static_cast<int>(at.chirality),
               include_maps ? at.atom_map.value_or(0) : 0};
  }

  auto ranks = internal::refine(m, internal::dense_ranks(init));
  const int n = m.num_atoms();
  while (internal::count_classes(ranks) < n) {
    std::map<int, int> size;
    for (int r: ranks) ++size[r];
    int tied = -1;
    for (const auto &[r, c]: size)
      if (c > 1) {
        tied = r;
        break;
      }
    int chosen = -1;
    for (int a = 0; a < n && chosen < 0; ++a)
      if (ranks[a] == tied) chosen = a;
    for (int a = 0; a < n; ++a)
      ranks[a] = ranks[a] * 2 + (ranks[a] == tied && a != chosen ? 1 : 0);
    ranks = internal::refine(m, internal::dense_ranks(ranks));
  }
  return ranks;
}

struct CanonicalOptions {
  bool include_maps = true;
};

/// Canonical form: benzene rings normalized, atoms reordered into canonical
/// output order, source_text set to the canonical SMILES. Writing the result
/// with write_smiles reproduces that text.
inline Molecule canonicalize(const Molecule &m, CanonicalOptions opts = {}) {
  Molecule base = normalize_benzene_rings(m);
  if (!opts.include_maps) base = strip_maps(base);
  const auto ranks = canonical_ranks(base, opts.include_maps);
  internal::SmilesEmitter emitter(base, ranks, opts.include_maps);
  std::string text = emitter.emit();
  return reordered(base, emitter.order(), std::move(text));
}

inline std::string canonical_smiles(const Molecule &m, CanonicalOptions opts = {}) {
  return canonicalize(m, opts).source_text();
}

/// Replaces any atom maps with 1..n following canonical output order.
inline Molecule annotate_sequential_maps(const Molecule &m) {
  const Molecule canon = canonicalize(strip_maps(m), {.include_maps = false});
  auto atoms = canon.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].atom_map = static_cast<int>(i) + 1;
  Molecule mapped(std::move(atoms), canon.bonds());
  std::string text = write_smiles(mapped);
  return Molecule(mapped.atoms(), mapped.bonds(), std::move(text));
}

}  // namespace rh
