//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string_view>

namespace rh {

// clang-format off
inline constexpr std::array<std::string_view, 118> kElementSymbols = {
  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
  "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
  "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
  "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
  "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
  "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
  "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
  "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
  "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
  "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};
// clang-format on

/// Atomic number, or 0 when `symbol` is not an element.
inline int atomic_number(std::string_view symbol) {
  const auto it = std::find(kElementSymbols.begin(), kElementSymbols.end(), symbol);
  return it == kElementSymbols.end()
             ? 0
             : static_cast<int>(it - kElementSymbols.begin()) + 1;
}

inline bool is_element_symbol(std::string_view symbol) {
  return atomic_number(symbol) != 0;
}

/// Default valences of the SMILES organic subset, ascending. Empty span for
/// anything outside the subset.
inline std::span<const int> default_valences(std::string_view symbol) {
  static constexpr int kB[] = {3};
  static constexpr int kC[] = {4};
  static constexpr int kN[] = {3, 5};
  static constexpr int kO[] = {2};
  static constexpr int kP[] = {3, 5};
  static constexpr int kS[] = {2, 4, 6};
  static constexpr int kHalogen[] = {1};

  if (symbol == "B") return kB;
  if (symbol == "C") return kC;
  if (symbol == "N") return kN;
  if (symbol == "O") return kO;
  if (symbol == "P") return kP;
  if (symbol == "S") return kS;
  if (symbol == "F" || symbol == "Cl" || symbol == "Br" || symbol == "I")
    return kHalogen;
  return {};
}

inline bool is_organic_subset(std::string_view symbol) {
  return !default_valences(symbol).empty();
}

/// Elements that may be written lowercase (aromatic) in SMILES.
inline bool can_be_aromatic(std::string_view symbol) {
  for (std::string_view s: {"B", "C", "N", "O", "P", "S", "Se", "As", "Te"})
    if (s == symbol) return true;
  return false;
}

/// Aromatic symbols allowed without brackets.
inline bool is_aromatic_organic(std::string_view symbol) {
  for (std::string_view s: {"B", "C", "N", "O", "P", "S"})
    if (s == symbol) return true;
  return false;
}

}  // namespace rh
