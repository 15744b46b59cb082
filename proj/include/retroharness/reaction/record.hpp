//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "retroharness/chem/molecule.hpp"
#include "retroharness/chem/smiles.hpp"
#include "retroharness/util/text.hpp"

namespace rh {

enum class Split {
  kTrain,
  kVal,
  kTest,
};

inline std::string_view to_string(Split s) {
  switch (s) {
  case Split::kTrain:
    return "train";
  case Split::kVal:
    return "val";
  case Split::kTest:
    return "test";
  }
  return "test";
}

/// Accepts train/val/test plus the common aliases valid, validation and dev.
inline std::optional<Split> parse_split(std::string_view text) {
  const std::string s = normalize_name(text);
  if (s == "train") return Split::kTrain;
  if (s == "val" || s == "valid" || s == "validation" || s == "dev") return Split::kVal;
  if (s == "test") return Split::kTest;
  return std::nullopt;
}

class ReactionError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ParsedReaction {
  std::vector<Molecule> reactants;
  std::vector<Molecule> reagents;
  Molecule product;
};

namespace internal {

inline std::vector<Molecule> parse_field(std::string_view field, std::string_view what) {
  std::vector<Molecule> out;
  if (trim(field).empty()) return out;
  for (const auto &part: split(field, '.')) {
    if (part.empty()) throw ReactionError("empty molecule in " + std::string(what));
    try {
      out.push_back(parse_smiles(part));
    } catch (const SmilesError &e) {
      throw ReactionError(std::string(what) + " '" + part + "': " + e.what());
    }
  }
  return out;
}

}  // namespace internal

/// Splits "reactants>reagents>product" (">>" when reagents are absent) and
/// parses every molecule. Reactant and reagent fields are split on '.', so
/// each entry keeps its own source text.
inline ParsedReaction parse_reaction_smiles(std::string_view text) {
  const auto fields = split(trim(text), '>');
  if (fields.size() != 3)
    throw ReactionError("reaction SMILES must have three '>'-separated fields");
  ParsedReaction r;
  r.reactants = internal::parse_field(fields[0], "reactant");
  r.reagents = internal::parse_field(fields[1], "reagent");
  if (trim(fields[2]).empty()) throw ReactionError("missing product");
  try {
    r.product = parse_smiles(trim(fields[2]));
  } catch (const SmilesError &e) {
    throw ReactionError("product '" + fields[2] + "': " + e.what());
  }
  if (r.reactants.empty()) throw ReactionError("no reactants");
  return r;
}

/// Atom-mapping sanity: product maps unique, each product map on at most one
/// reactant atom.
inline void check_mapping(const ParsedReaction &r) {
  std::map<int, int> product_maps;
  for (const auto &a: r.product.atoms())
    if (a.atom_map && ++product_maps[*a.atom_map] > 1)
      throw ReactionError("product atom map " + std::to_string(*a.atom_map) +
                          " is used twice");
  std::map<int, int> reactant_uses;
  for (const auto &m: r.reactants)
    for (const auto &a: m.atoms())
      if (a.atom_map && product_maps.count(*a.atom_map) &&
          ++reactant_uses[*a.atom_map] > 1)
        throw ReactionError("atom map " + std::to_string(*a.atom_map) +
                            " appears on more than one reactant atom");
}

struct ReactionRecord {
  std::string record_id;
  std::string reaction_smiles;
  std::vector<Molecule> reactants;
  std::vector<Molecule> reagents;
  Molecule product;
  std::string reaction_name;
  std::string reaction_class;
  Split split = Split::kTrain;
  // Present when the input already carried a structural label.
  std::optional<AtomMapSet> structural_label;
  std::optional<std::string> label_kind;

  /// "product>>reactants" with maps intact, reagents omitted.
  std::string retro_smiles() const {
    std::vector<std::string> parts;
    for (const auto &m: reactants) parts.push_back(m.source_text());
    return product.source_text() + ">>" + join(parts, ".");
  }
};

}  // namespace rh
