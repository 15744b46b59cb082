//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "retroharness/chem/molecule.hpp"
#include "retroharness/chem/smiles.hpp"
#include "retroharness/parse/envelope.hpp"
#include "retroharness/parse/position.hpp"

namespace rh {

struct TransitionPrediction {
  std::vector<Molecule> reactants;
  std::vector<std::string> reactant_smiles;  // as the model wrote them
  bool is_valid = false;
  bool is_template = false;
  std::string reasoning;
  std::string reaction_name;
};

/// Flattens every reactant permutation of every reaction group. Never throws.
inline ParseOutcome<TransitionPrediction> parse_transition_output(std::string_view raw,
                                                                  const Molecule &product) {
  (void)product;  // reserved for product-side checks; the schema needs none today
  ParseOutcome<TransitionPrediction> out;
  const auto root = extract_json_object(raw);
  if (!root) {
    out.failure = FailureClass::kNoJson;
    out.detail = "no JSON object found";
    return out;
  }
  if (!root->contains("reaction_analysis") || !(*root)["reaction_analysis"].is_array()) {
    out.failure = FailureClass::kSchemaViolation;
    out.detail = "root key \"reaction_analysis\" missing or not a list";
    return out;
  }

  for (const auto &group: (*root)["reaction_analysis"]) {
    const auto drop = [&](const nlohmann::json &frag, const char *reason) {
      out.dropped.push_back({frag.dump(), reason});
    };
    if (!group.is_object() || !group.contains("reactant_permutations") ||
        !group["reactant_permutations"].is_array()) {
      drop(group, drop_reason::kMalformedPermutation);
      continue;
    }
    const std::string name = string_or(group, "forward_reaction_name");
    for (const auto &perm: group["reactant_permutations"]) {
      if (!perm.is_object() || !perm.contains("reactants") || !perm["reactants"].is_array() ||
          perm["reactants"].empty() || !perm.contains("is_valid") || !perm["is_valid"].is_boolean() ||
          !perm.contains("is_template") || !perm["is_template"].is_boolean()) {
        drop(perm, drop_reason::kMalformedPermutation);
        continue;
      }
      TransitionPrediction p;
      p.is_valid = perm["is_valid"].get<bool>();
      p.is_template = perm["is_template"].get<bool>();
      p.reasoning = string_or(perm, "reasoning");
      p.reaction_name = name;
      const char *reason = nullptr;
      for (const auto &r: perm["reactants"]) {
        if (!r.is_string()) {
          reason = drop_reason::kMalformedPermutation;
          break;
        }
        try {
          p.reactants.push_back(parse_smiles(r.get<std::string>()));
          p.reactant_smiles.push_back(r.get<std::string>());
        } catch (const SmilesError &) {
          reason = drop_reason::kInvalidSmiles;
          break;
        }
        if (!p.is_template && has_query_atoms(p.reactants.back())) {
          reason = drop_reason::kTemplateAtomsInNonTemplate;
          break;
        }
      }
      if (reason) {
        drop(perm, reason);
        continue;
      }
      out.ok.push_back(std::move(p));
    }
  }
  out.settle(FailureClass::kAllItemsInvalid);
  if (out.failure) out.detail = "no usable reactant permutation";
  return out;
}

inline nlohmann::ordered_json prediction_to_json(const TransitionPrediction &p) {
  nlohmann::ordered_json j;
  j["reaction_name"] = p.reaction_name;
  j["reactants"] = p.reactant_smiles;
  j["is_valid"] = p.is_valid;
  j["is_template"] = p.is_template;
  j["reasoning"] = p.reasoning;
  return j;
}

template <typename T, typename F>
nlohmann::ordered_json outcome_to_json(const ParseOutcome<T> &o, F item_to_json) {
  nlohmann::ordered_json j;
  j["failure"] = o.failure ? nlohmann::ordered_json(std::string(to_string(*o.failure)))
                           : nlohmann::ordered_json(nullptr);
  j["detail"] = o.detail;
  auto ok = nlohmann::ordered_json::array();
  for (const auto &x: o.ok) ok.push_back(item_to_json(x));
  j["ok"] = std::move(ok);
  auto dropped = nlohmann::ordered_json::array();
  for (const auto &d: o.dropped) dropped.push_back({{"reason", d.reason}, {"fragment", d.fragment}});
  j["dropped"] = std::move(dropped);
  return j;
}

}  // namespace rh
