//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "retroharness/reaction/record.hpp"
#include "retroharness/util/files.hpp"

namespace rh {

struct OntologyEntry {
  std::string id;  // reaction name
  std::string reaction_class;

  bool operator==(const OntologyEntry &) const = default;
};

struct Ontology {
  std::vector<OntologyEntry> entries;  // sorted by id
  std::string source_split;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }

  /// Membership under normalize_name.
  bool contains(std::string_view name) const {
    const std::string key = normalize_name(name);
    for (const auto &e: entries)
      if (normalize_name(e.id) == key) return true;
    return false;
  }

  /// Class of `name` under normalize_name, if listed.
  std::optional<std::string> class_of(std::string_view name) const {
    const std::string key = normalize_name(name);
    for (const auto &e: entries)
      if (normalize_name(e.id) == key) return e.reaction_class;
    return std::nullopt;
  }
};

/// One entry per distinct reaction name in `split`, carrying that name's most
/// frequent class (ties go to the lexicographically smallest class).
inline Ontology build_ontology(const std::vector<ReactionRecord> &records, Split split) {
  std::map<std::string, std::map<std::string, int>> counts;
  for (const auto &r: records)
    if (r.split == split && !r.reaction_name.empty()) ++counts[r.reaction_name][r.reaction_class];
  if (counts.empty())
    throw std::invalid_argument("no named reactions in split '" +
                                std::string(to_string(split)) + "'");
  Ontology out;
  out.source_split = std::string(to_string(split));
  for (const auto &[name, classes]: counts) {
    const std::string *best = nullptr;
    int best_count = 0;
    for (const auto &[cls, n]: classes)
      if (n > best_count) {
        best = &cls;
        best_count = n;
      }
    out.entries.push_back({name, *best});
  }
  return out;
}

/// JSON array of {id, class}.
inline nlohmann::ordered_json ontology_to_json(const Ontology &o) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto &e: o.entries) {
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["class"] = e.reaction_class;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline Ontology ontology_from_json(const nlohmann::json &j) {
  if (!j.is_array()) throw std::invalid_argument("ontology must be a JSON array");
  Ontology o;
  for (const auto &e: j) {
    if (!e.is_object() || !e.contains("id") || !e["id"].is_string())
      throw std::invalid_argument("ontology entries need a string 'id'");
    std::string cls;
    if (e.contains("class") && e["class"].is_string()) cls = e["class"].get<std::string>();
    o.entries.push_back({e["id"].get<std::string>(), cls});
  }
  std::sort(o.entries.begin(), o.entries.end(),
            [](const OntologyEntry &a, const OntologyEntry &b) { return a.id < b.id; });
  return o;
}

inline Ontology load_ontology(const std::filesystem::path &path) {
  try {
    return ontology_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace rh
