//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "retroharness/chem/element.hpp"
#include "retroharness/chem/molecule.hpp"
#include "retroharness/parse/envelope.hpp"
#include "retroharness/reaction/ontology.hpp"
#include "retroharness/util/text.hpp"

namespace rh {

struct DisconnectionCandidate {
  AtomMapSet s;
  std::string reaction_name;
  std::string reaction_class;
  bool in_ontology = false;                // recomputed against the ontology
  std::optional<bool> claimed_in_ontology; // what the model said
  int importance = 0;                      // 1..4
  int priority = 0;                        // >= 1
  std::string rationale;
};

namespace drop_reason {
inline constexpr const char *kMalformedDisconnection = "malformed-disconnection";
inline constexpr const char *kUnresolvableMap = "unresolvable-map";
inline constexpr const char *kEmptyReactionList = "empty-reaction-list";
inline constexpr const char *kMissingReactionName = "missing-reaction-name";
inline constexpr const char *kImportanceOutOfRange = "importance-out-of-range";
inline constexpr const char *kPriorityOutOfRange = "priority-out-of-range";
inline constexpr const char *kDuplicate = "duplicate";
inline constexpr const char *kMalformedPermutation = "malformed-permutation";
inline constexpr const char *kInvalidSmiles = "syntactically-invalid-smiles";
inline constexpr const char *kTemplateAtomsInNonTemplate = "template-atoms-in-non-template";
}  // namespace drop_reason

/// Parses "C:12 N:14" style tokens into their map numbers. Each token is an
/// element symbol (any case, or `*`), a colon, and a positive integer.
inline std::optional<AtomMapSet> parse_disconnection(std::string_view text) {
  AtomMapSet s;
  for (const auto &tok: split_whitespace(text)) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) return std::nullopt;
    const auto sym = tok.substr(0, colon);
    const auto num = tok.substr(colon + 1);
    if (sym != "*") {
      std::string cap = sym;
      cap[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cap[0])));
      if (!is_element_symbol(cap)) return std::nullopt;
    }
    if (num.size() > 9 || num.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    const int map = std::stoi(num);
    if (map < 1) return std::nullopt;
    s.insert(map);
  }
  if (s.empty()) return std::nullopt;
  return s;
}

/// The key holding an entry's reaction list; both spellings occur in the
/// prompt's own examples.
inline const nlohmann::json *reaction_list(const nlohmann::json &entry) {
  for (const char *key: {"reactions", "Reaction", "Reactions", "reaction"})
    if (entry.contains(key)) return &entry[key];
  return nullptr;
}

/// Flattens each disconnection entry into one candidate per (s, reaction).
/// Never throws.
inline ParseOutcome<DisconnectionCandidate> parse_position_output(std::string_view raw,
                                                                  const Molecule &product,
                                                                  const Ontology &ontology) {
  ParseOutcome<DisconnectionCandidate> out;
  const auto root = extract_json_object(raw);
  if (!root) {
    out.failure = FailureClass::kNoJson;
    out.detail = "no JSON object found";
    return out;
  }
  if (!root->contains("disconnections") || !(*root)["disconnections"].is_array()) {
    out.failure = FailureClass::kSchemaViolation;
    out.detail = "root key \"disconnections\" missing or not a list";
    return out;
  }

  std::set<std::pair<AtomMapSet, std::string>> seen;
  for (const auto &entry: (*root)["disconnections"]) {
    const auto drop = [&](const nlohmann::json &frag, const char *reason) {
      out.dropped.push_back({frag.dump(), reason});
    };
    if (!entry.is_object() || !entry.contains("disconnection") || !entry["disconnection"].is_string()) {
      drop(entry, drop_reason::kMalformedDisconnection);
      continue;
    }
    const auto s = parse_disconnection(entry["disconnection"].get<std::string>());
    if (!s) {
      drop(entry, drop_reason::kMalformedDisconnection);
      continue;
    }
    if (!resolve_map_set(product, *s).missing.empty()) {
      drop(entry, drop_reason::kUnresolvableMap);
      continue;
    }
    const auto *reactions = reaction_list(entry);
    if (!reactions || !reactions->is_array() || reactions->empty()) {
      drop(entry, drop_reason::kEmptyReactionList);
      continue;
    }
    for (const auto &rx: *reactions) {
      const std::string raw_name = rx.is_object() ? string_or(rx, "forwardReaction") : "";
      const std::string name(trim(raw_name));
      if (name.empty()) {
        drop(rx, drop_reason::kMissingReactionName);
        continue;
      }
      const auto importance = rx.contains("Retrosynthesis Importance")
                                  ? as_integer(rx["Retrosynthesis Importance"])
                                  : std::nullopt;
      if (!importance || *importance < 1 || *importance > 4) {
        drop(rx, drop_reason::kImportanceOutOfRange);
        continue;
      }
      const auto priority = rx.contains("Priority") ? as_integer(rx["Priority"]) : std::nullopt;
      if (!priority || *priority < 1 || *priority > 1000000) {
        drop(rx, drop_reason::kPriorityOutOfRange);
        continue;
      }
      if (!seen.insert({*s, normalize_name(name)}).second) {
        drop(rx, drop_reason::kDuplicate);
        continue;
      }
      DisconnectionCandidate c;
      c.s = *s;
      c.reaction_name = name;
      c.reaction_class = string_or(rx, "forwardReactionClass");
      c.in_ontology = ontology.contains(name);
      if (rx.contains("isInOntology") && rx["isInOntology"].is_boolean())
        c.claimed_in_ontology = rx["isInOntology"].get<bool>();
      c.importance = static_cast<int>(*importance);
      c.priority = static_cast<int>(*priority);
      c.rationale = string_or(rx, "rationale");
      out.ok.push_back(std::move(c));
    }
  }
  out.settle(FailureClass::kAllItemsInvalid);
  if (out.failure) out.detail = "no usable disconnection";
  return out;
}

inline nlohmann::ordered_json candidate_to_json(const DisconnectionCandidate &c) {
  nlohmann::ordered_json j;
  j["s"] = c.s.to_vector();
  j["reaction_name"] = c.reaction_name;
  j["reaction_class"] = c.reaction_class;
  j["in_ontology"] = c.in_ontology;
  j["claimed_in_ontology"] = c.claimed_in_ontology ? nlohmann::ordered_json(*c.claimed_in_ontology)
                                                   : nlohmann::ordered_json(nullptr);
  j["importance"] = c.importance;
  j["priority"] = c.priority;
  j["rationale"] = c.rationale;
  return j;
}

}  // namespace rh
