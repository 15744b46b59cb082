//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rh {

enum class FailureClass {
  kNoJson,
  kSchemaViolation,
  kAllItemsInvalid,
};

inline std::string_view to_string(FailureClass f) {
  switch (f) {
  case FailureClass::kNoJson: return "no_json";
  case FailureClass::kSchemaViolation: return "schema_violation";
  case FailureClass::kAllItemsInvalid: return "all_items_invalid";
  }
  return "unknown";
}

struct Dropped {
  std::string fragment;  // the offending JSON, compact
  std::string reason;
};

/// `ok` is empty iff `failure` is set.
template <typename T>
struct ParseOutcome {
  std::vector<T> ok;
  std::vector<Dropped> dropped;
  std::optional<FailureClass> failure;
  std::string detail;  // human-readable note for failures

  void settle(FailureClass when_empty) {
    if (ok.empty() && !failure) failure = when_empty;
  }
};

/// Index one past the brace closing the object that opens at `open`, or npos
/// when the text ends first. Braces inside JSON strings are ignored.
inline std::size_t balanced_object_end(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '"')
      in_string = true;
    else if (c == '{')
      ++depth;
    else if (c == '}' && --depth == 0)
      return i + 1;
  }
  return std::string_view::npos;
}

/// First outermost balanced `{...}` in `raw` that parses as JSON. Code
/// fences and surrounding prose are skipped over; `//` and `/* */` comments
/// inside the object are tolerated.
inline std::optional<nlohmann::json> extract_json_object(std::string_view raw) {
  std::size_t pos = 0;
  while ((pos = raw.find('{', pos)) != std::string_view::npos) {
    const auto end = balanced_object_end(raw, pos);
    if (end == std::string_view::npos) return std::nullopt;
    auto j = nlohmann::json::parse(raw.substr(pos, end - pos), nullptr, false, true);
    if (!j.is_discarded() && j.is_object()) return j;
    pos = end;
  }
  return std::nullopt;
}

/// Integer value of `j` when it is an integral number or a string of digits.
inline std::optional<long long> as_integer(const nlohmann::json &j) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (d == static_cast<double>(static_cast<long long>(d))) return static_cast<long long>(d);
    return std::nullopt;
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!s.empty() && s.size() < 10 && s.find_first_not_of("0123456789") == std::string::npos)
      return std::stoll(s);
  }
  return std::nullopt;
}

inline std::string string_or(const nlohmann::json &obj, const char *key, std::string fallback = "") {
  if (obj.contains(key) && obj[key].is_string()) return obj[key].get<std::string>();
  return fallback;
}

}  // namespace rh
