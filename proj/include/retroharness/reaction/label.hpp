//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "retroharness/reaction/record.hpp"

namespace rh {

enum class LabelKind {
  kConnectivity,  // some bond was formed or broken
  kBondOrder,     // only bond kinds changed
  kEmpty,         // nothing detectable
};

inline std::string_view to_string(LabelKind k) {
  switch (k) {
  case LabelKind::kConnectivity:
    return "connectivity";
  case LabelKind::kBondOrder:
    return "bond_order";
  case LabelKind::kEmpty:
    return "empty";
  }
  return "empty";
}

/// A product-side bond difference between two atom maps. `partner` is 0 when
/// the reactant-side partner has no product counterpart.
struct MapBond {
  int map = 0;
  int partner = 0;

  auto operator<=>(const MapBond &) const = default;
};

struct StructuralLabel {
  AtomMapSet atoms;
  LabelKind kind = LabelKind::kEmpty;
  std::vector<MapBond> formed;
  std::vector<MapBond> broken;
  std::vector<MapBond> changed;
};

/// Reaction center from the product's perspective. FORMED: product bonds
/// between mapped atoms whose reactant counterparts are not bonded (or sit on
/// different reactants, or do not exist). BROKEN: reactant bonds touching a
/// product-mapped atom that the product lacks. CHANGED: bonds on both sides
/// with a different kind. Connectivity changes take priority; reagents and
/// stereo marks are ignored.
inline StructuralLabel extract_structural_label(const std::vector<Molecule> &reactants,
                                                const Molecule &product) {
  std::map<int, int> in_product;  // map -> product atom
  for (int i = 0; i < product.num_atoms(); ++i)
    if (const auto m = product.atom(i).atom_map) in_product.emplace(*m, i);

  struct Site {
    int mol;
    int atom;
  };
  std::map<int, Site> in_reactants;  // product maps only
  for (int r = 0; r < static_cast<int>(reactants.size()); ++r)
    for (int i = 0; i < reactants[r].num_atoms(); ++i)
      if (const auto m = reactants[r].atom(i).atom_map; m && in_product.count(*m))
        in_reactants.emplace(*m, Site{r, i});

  StructuralLabel out;
  std::set<MapBond> formed, broken, changed;

  for (const Bond &b: product.bonds()) {
    const auto ma = product.atom(b.begin).atom_map;
    const auto mb = product.atom(b.end).atom_map;
    if (!ma || !mb) continue;
    const auto [lo, hi] = std::minmax(*ma, *mb);
    const auto ra = in_reactants.find(*ma);
    const auto rb = in_reactants.find(*mb);
    if (ra == in_reactants.end() || rb == in_reactants.end() ||
        ra->second.mol != rb->second.mol) {
      formed.insert({lo, hi});
      continue;
    }
    const Molecule &rm = reactants[ra->second.mol];
    const auto rbond = rm.bond_between(ra->second.atom, rb->second.atom);
    if (!rbond)
      formed.insert({lo, hi});
    else if (rm.bond(*rbond).kind != b.kind)
      changed.insert({lo, hi});
  }

  for (const Molecule &rm: reactants) {
    for (const Bond &b: rm.bonds()) {
      auto ma = rm.atom(b.begin).atom_map;
      auto mb = rm.atom(b.end).atom_map;
      const bool pa = ma && in_product.count(*ma);
      const bool pb = mb && in_product.count(*mb);
      if (!pa && !pb) continue;
      if (pa && pb) {
        const auto [lo, hi] = std::minmax(*ma, *mb);
        if (!product.bond_between(in_product[*ma], in_product[*mb])) broken.insert({lo, hi});
        continue;
      }
      broken.insert({pa ? *ma : *mb, 0});
    }
  }

  out.formed.assign(formed.begin(), formed.end());
  out.broken.assign(broken.begin(), broken.end());
  out.changed.assign(changed.begin(), changed.end());

  auto collect = [&](const std::vector<MapBond> &bonds) {
    for (const auto &mb: bonds) {
      out.atoms.insert(mb.map);
      if (mb.partner != 0) out.atoms.insert(mb.partner);
    }
  };
  collect(out.formed);
  collect(out.broken);
  if (!out.atoms.empty()) {
    out.kind = LabelKind::kConnectivity;
    return out;
  }
  collect(out.changed);
  out.kind = out.atoms.empty() ? LabelKind::kEmpty : LabelKind::kBondOrder;
  return out;
}

inline StructuralLabel extract_structural_label(const ReactionRecord &r) {
  return extract_structural_label(r.reactants, r.product);
}

}  // namespace rh
