//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "retroharness/chem/canonical.hpp"
#include "retroharness/prompt/templates.hpp"
#include "retroharness/reaction/ontology.hpp"
#include "retroharness/reaction/sampling.hpp"
#include "retroharness/util/digest.hpp"
#include "retroharness/util/files.hpp"

namespace rh {

class PromptError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PromptTemplate {
  std::string name;
  std::string body;
  std::vector<std::string> placeholders;

  std::string digest() const { return sha256_hex(body); }
};

inline constexpr std::string_view kPositionTemplate = "position";
inline constexpr std::string_view kTransitionTemplate = "transition";
inline constexpr std::string_view kTransitionShortTemplate = "transition_short";

inline const std::vector<std::string> &position_placeholders() {
  static const std::vector<std::string> p = {"<reaction_ontology>", "<canonicalized_product>"};
  return p;
}

inline const std::vector<std::string> &transition_placeholders() {
  static const std::vector<std::string> p = {"<REACTION_POSITION>", "<REACTION_NAME>",
                                             "<PRODUCT_SMILES>", "<TRAIN_REACTION_EXAMPLES>"};
  return p;
}

/// The three prompt templates, built-in or loaded from an override directory.
class TemplateSet {
public:
  TemplateSet() {
    add(std::string(kPositionTemplate), std::string(templates::kPosition), position_placeholders());
    add(std::string(kTransitionTemplate), std::string(templates::kTransition),
        transition_placeholders());
    add(std::string(kTransitionShortTemplate), std::string(templates::kTransitionShort),
        transition_placeholders());
  }

  /// Replaces any template for which `<dir>/<name>.txt` exists. Every
  /// placeholder of the replaced template must still occur in the new body.
  static TemplateSet with_overrides(const std::filesystem::path &dir) {
    TemplateSet set;
    if (!std::filesystem::is_directory(dir))
      throw PromptError("prompt directory does not exist: " + dir.string());
    for (auto &[name, t]: set.templates_) {
      const auto file = dir / (name + ".txt");
      if (!std::filesystem::exists(file)) continue;
      t.body = read_file(file);
      for (const auto &p: t.placeholders)
        if (t.body.find(p) == std::string::npos)
          throw PromptError(file.string() + " lacks placeholder " + p);
    }
    return set;
  }

  const PromptTemplate &get(std::string_view name) const {
    const auto it = templates_.find(std::string(name));
    if (it == templates_.end()) throw PromptError("unknown template " + std::string(name));
    return it->second;
  }

  const std::map<std::string, PromptTemplate> &all() const { return templates_; }

private:
  void add(std::string name, std::string body, std::vector<std::string> placeholders) {
    templates_[name] = PromptTemplate{name, std::move(body), std::move(placeholders)};
  }

  std::map<std::string, PromptTemplate> templates_;
};

struct SubstitutionDigest {
  std::string sha256;
  int items = 0;
};

struct RenderedPrompt {
  std::string template_name;
  std::string template_digest;
  std::string text;
  std::map<std::string, SubstitutionDigest> substitution_record;
  int example_count = 0;
  std::string label;  // caller-chosen identifier, e.g. the record id
};

struct Substitution {
  std::string value;
  int items = 1;
};

/// Fills every placeholder of `t` in a single left-to-right pass, so text
/// inserted for one placeholder is never rescanned for another.
inline RenderedPrompt fill_template(const PromptTemplate &t,
                                    const std::map<std::string, Substitution> &values) {
  for (const auto &p: t.placeholders)
    if (!values.count(p)) throw PromptError("no value for placeholder " + p);

  RenderedPrompt out;
  out.template_name = t.name;
  out.template_digest = t.digest();
  std::size_t pos = 0;
  while (pos < t.body.size()) {
    std::size_t best = std::string::npos;
    const std::string *hit = nullptr;
    for (const auto &p: t.placeholders) {
      const auto at = t.body.find(p, pos);
      if (at < best) {
        best = at;
        hit = &p;
      }
    }
    if (!hit) {
      out.text.append(t.body, pos, std::string::npos);
      break;
    }
    out.text.append(t.body, pos, best - pos);
    out.text += values.at(*hit).value;
    pos = best + hit->size();
  }
  for (const auto &[p, v]: values) out.substitution_record[p] = {sha256_hex(v.value), v.items};
  return out;
}

/// Placeholder tokens of `t` still present in `text`.
inline std::vector<std::string> residual_placeholders(const PromptTemplate &t,
                                                      std::string_view text) {
  std::vector<std::string> out;
  for (const auto &p: t.placeholders)
    if (text.find(p) != std::string_view::npos) out.push_back(p);
  return out;
}

/// "Elem:map" tokens in ascending map order, aromatic atoms lowercase.
inline std::string position_tokens(const Molecule &product, const AtomMapSet &s) {
  if (s.empty()) throw PromptError("empty reaction position");
  const auto res = resolve_map_set(product, s);
  if (!res.missing.empty())
    throw PromptError("atom map " + std::to_string(*res.missing.begin()) +
                      " does not occur in the product");
  std::vector<std::string> tokens;
  for (int map: s) tokens.push_back(product.atom(*product.find_map(map)).display_symbol() + ":" +
                                    std::to_string(map));
  return join(tokens, " ");
}

inline RenderedPrompt render_position_prompt(const Molecule &product, const Ontology &ontology,
                                             const TemplateSet &templates = {}) {
  if (map_values(product).empty()) throw PromptError("product carries no atom maps");
  if (ontology.empty()) throw PromptError("ontology is empty");
  const auto &t = templates.get(kPositionTemplate);
  return fill_template(
      t, {{"<reaction_ontology>",
           {ontology_to_json(ontology).dump(), static_cast<int>(ontology.size())}},
          {"<canonicalized_product>", {canonical_smiles(product), 1}}});
}

enum class TransitionVariant {
  kFull,
  kShort,
};

inline RenderedPrompt render_transition_prompt(const Molecule &product, const AtomMapSet &s,
                                               const std::optional<std::string> &reaction_name,
                                               const ExampleLibrary &library,
                                               TransitionVariant variant,
                                               const TemplateSet &templates = {}) {
  const auto &t = templates.get(variant == TransitionVariant::kFull ? kTransitionTemplate
                                                                    : kTransitionShortTemplate);
  const std::string tokens = position_tokens(product, s);
  const nlohmann::json name =
      reaction_name ? nlohmann::json(*reaction_name) : nlohmann::json(nullptr);
  auto out = fill_template(
      t, {{"<REACTION_POSITION>", {nlohmann::json(tokens).dump(), static_cast<int>(s.size())}},
          {"<REACTION_NAME>", {name.dump(), reaction_name ? 1 : 0}},
          {"<PRODUCT_SMILES>", {nlohmann::json(canonical_smiles(product)).dump(), 1}},
          {"<TRAIN_REACTION_EXAMPLES>",
           {nlohmann::json(library.examples).dump(), static_cast<int>(library.examples.size())}}});
  out.example_count = static_cast<int>(library.examples.size());
  return out;
}

}  // namespace rh
