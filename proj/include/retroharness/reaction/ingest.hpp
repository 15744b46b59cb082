//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "retroharness/reaction/record.hpp"
#include "retroharness/util/csv.hpp"
#include "retroharness/util/files.hpp"

namespace rh {

enum class DatasetFormat {
  kJsonl,
  kCsv,
};

/// Schema-level problem that makes the whole file unusable.
class DatasetError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RejectedRow {
  int row = 0;  // 1-based physical line number
  std::string record_id;
  std::string message;
};

struct IngestResult {
  std::vector<ReactionRecord> records;
  std::vector<RejectedRow> rejects;
};

inline constexpr std::array<const char *, 5> kRequiredColumns = {
    "id", "reaction_smiles", "reaction_name", "reaction_class", "split"};

/// ".csv" means CSV; everything else is read as JSONL.
inline DatasetFormat guess_format(const std::filesystem::path &path) {
  return path.extension() == ".csv" ? DatasetFormat::kCsv : DatasetFormat::kJsonl;
}

namespace internal {

inline std::string json_scalar_text(const nlohmann::json &v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

struct RawRow {
  std::string id;
  std::string smiles;
  std::string name;
  std::string cls;
  std::string split;
  std::optional<AtomMapSet> label;
  std::optional<std::string> label_kind;
};

inline ReactionRecord build_record(const RawRow &raw) {
  ReactionRecord r;
  r.record_id = raw.id;
  r.reaction_smiles = std::string(trim(raw.smiles));
  r.reaction_name = std::string(trim(raw.name));
  r.reaction_class = std::string(trim(raw.cls));
  const auto split = parse_split(raw.split);
  if (!split) throw ReactionError("unknown split '" + raw.split + "'");
  r.split = *split;
  auto parsed = parse_reaction_smiles(raw.smiles);
  check_mapping(parsed);
  if (parsed.product.empty()) throw ReactionError("empty product");
  r.reactants = std::move(parsed.reactants);
  r.reagents = std::move(parsed.reagents);
  r.product = std::move(parsed.product);
  r.structural_label = raw.label;
  r.label_kind = raw.label_kind;
  return r;
}

inline std::optional<AtomMapSet> json_label(const nlohmann::json &obj) {
  const auto it = obj.find("structural_label");
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) throw ReactionError("structural_label must be an array");
  AtomMapSet s;
  for (const auto &v: *it) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
      throw ReactionError("structural_label entries must be positive integers");
    s.insert(v.get<int>());
  }
  return s;
}

inline void ingest_jsonl(std::istream &in, IngestResult &out) {
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
      out.rejects.push_back({row, "", std::string("invalid JSON: ") + e.what()});
      continue;
    }
    if (!obj.is_object()) {
      out.rejects.push_back({row, "", "row is not a JSON object"});
      continue;
    }
    for (const char *col: kRequiredColumns)
      if (!obj.contains(col))
        throw DatasetError("row " + std::to_string(row) + ": missing required column '" +
                           col + "'");
    RawRow raw{json_scalar_text(obj["id"]),
               json_scalar_text(obj["reaction_smiles"]),
               json_scalar_text(obj["reaction_name"]),
               json_scalar_text(obj["reaction_class"]),
               json_scalar_text(obj["split"]),
               std::nullopt,
               std::nullopt};
    try {
      raw.label = json_label(obj);
      if (obj.contains("label_kind") && obj["label_kind"].is_string())
        raw.label_kind = obj["label_kind"].get<std::string>();
      out.records.push_back(build_record(raw));
    } catch (const ReactionError &e) {
      out.rejects.push_back({row, raw.id, e.what()});
    }
  }
}

inline void ingest_csv(std::istream &in, IngestResult &out) {
  std::string line;
  int row = 0;
  std::map<std::string, std::size_t> column;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = parse_csv_line(line);
    } catch (const std::invalid_argument &e) {
      if (!have_header) throw DatasetError(std::string("malformed CSV header: ") + e.what());
      out.rejects.push_back({row, "", std::string("malformed CSV: ") + e.what()});
      continue;
    }
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        column[std::string(trim(fields[i]))] = i;
      for (const char *col: kRequiredColumns)
        if (!column.count(col))
          throw DatasetError(std::string("missing required column '") + col + "'");
      have_header = true;
      continue;
    }
    auto field = [&](const std::string &name) -> std::string {
      const auto it = column.find(name);
      if (it == column.end() || it->second >= fields.size()) return "";
      return fields[it->second];
    };
    RawRow raw{field("id"), field("reaction_smiles"), field("reaction_name"),
               field("reaction_class"), field("split"), std::nullopt, std::nullopt};
    try {
      if (fields.size() != column.size())
        throw ReactionError("expected " + std::to_string(column.size()) + " fields, got " +
                            std::to_string(fields.size()));
      if (const auto label = field("structural_label"); !trim(label).empty()) {
        AtomMapSet s;
        for (const auto &tok: split_whitespace(label)) {
          int v = 0;
          try {
            v = std::stoi(tok);
          } catch (const std::exception &) {
            throw ReactionError("structural_label token '" + tok + "' is not an integer");
          }
          if (v < 1) throw ReactionError("structural_label entries must be positive");
          s.insert(v);
        }
        raw.label = s;
      }
      if (const auto kind = field("label_kind"); !kind.empty()) raw.label_kind = kind;
      out.records.push_back(build_record(raw));
    } catch (const ReactionError &e) {
      out.rejects.push_back({row, raw.id, e.what()});
    }
  }
}

}  // namespace internal

/// Reads a reaction dataset. Rows that fail to parse land in `rejects` with
/// their line number; schema problems (missing columns) throw DatasetError.
inline IngestResult ingest_dataset(std::istream &in, DatasetFormat format) {
  IngestResult out;
  if (format == DatasetFormat::kCsv)
    internal::ingest_csv(in, out);
  else
    internal::ingest_jsonl(in, out);
  return out;
}

inline IngestResult ingest_dataset(const std::filesystem::path &path, DatasetFormat format) {
  std::istringstream in(read_file(path));
  return ingest_dataset(in, format);
}

inline IngestResult ingest_dataset(const std::filesystem::path &path) {
  return ingest_dataset(path, guess_format(path));
}

/// JSON object for one record in the dataset input schema, plus the label
/// fields when known.
inline nlohmann::ordered_json record_to_json(const ReactionRecord &r) {
  nlohmann::ordered_json j;
  j["id"] = r.record_id;
  j["reaction_smiles"] = r.reaction_smiles;
  j["reaction_name"] = r.reaction_name;
  j["reaction_class"] = r.reaction_class;
  j["split"] = std::string(to_string(r.split));
  if (r.structural_label) j["structural_label"] = r.structural_label->to_vector();
  if (r.label_kind) j["label_kind"] = *r.label_kind;
  return j;
}

inline nlohmann::ordered_json reject_to_json(const RejectedRow &r) {
  nlohmann::ordered_json j;
  j["row"] = r.row;
  j["id"] = r.record_id;
  j["message"] = r.message;
  return j;
}

}  // namespace rh
