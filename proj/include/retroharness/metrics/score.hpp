//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "retroharness/chem/canonical.hpp"
#include "retroharness/chem/molecule.hpp"
#include "retroharness/chem/substructure.hpp"
#include "retroharness/parse/position.hpp"
#include "retroharness/parse/transition.hpp"
#include "retroharness/util/text.hpp"

namespace rh {

struct PositionScore {
  bool partial_match = false;
  double best_jaccard = 0.0;
  bool exact_match = false;
  std::optional<bool> reaction_match;            // set iff partial_match
  std::optional<bool> reaction_match_in_ontology;// same, in-ontology candidates only
  int n_predictions = 0;
  bool failed = false;
  // Representative prediction for confusion matrices: the in-ontology
  // best-Jaccard candidate with the lowest Priority, if any.
  std::optional<std::string> predicted_name;
  std::optional<std::string> predicted_class;
};

/// Scores flattened (s, name) candidates against the structural label.
inline PositionScore score_position(const std::vector<DisconnectionCandidate> &cands,
                                    const AtomMapSet &s_gt, std::string_view beta_gt) {
  if (s_gt.empty()) throw std::invalid_argument("ground-truth position is empty");
  PositionScore out;
  out.n_predictions = static_cast<int>(cands.size());
  out.failed = cands.empty();
  if (cands.empty()) return out;

  // Compare ratios exactly as fractions i/u so ties are not lost to rounding.
  long best_i = 0, best_u = 1;
  for (const auto &c: cands) {
    const long i = static_cast<long>(c.s.intersection_size(s_gt));
    const long u = static_cast<long>(c.s.union_size(s_gt));
    if (i > 0) out.partial_match = true;
    if (i * best_u > best_i * u) {
      best_i = i;
      best_u = u;
    }
  }
  out.best_jaccard = static_cast<double>(best_i) / static_cast<double>(best_u);
  out.exact_match = best_i == best_u;
  if (!out.partial_match) return out;

  const std::string gt = normalize_name(beta_gt);
  bool any = false, any_onto = false;
  const DisconnectionCandidate *rep = nullptr;
  for (const auto &c: cands) {
    const long i = static_cast<long>(c.s.intersection_size(s_gt));
    const long u = static_cast<long>(c.s.union_size(s_gt));
    if (i * best_u != best_i * u) continue;
    const bool hit = normalize_name(c.reaction_name) == gt;
    any = any || hit;
    if (c.in_ontology) {
      any_onto = any_onto || hit;
      if (!rep || c.priority < rep->priority) rep = &c;
    }
  }
  out.reaction_match = any;
  out.reaction_match_in_ontology = any_onto;
  if (rep) {
    out.predicted_name = rep->reaction_name;
    out.predicted_class = rep->reaction_class;
  }
  return out;
}

struct TemplatePair {
  int gt_index = 0;
  int template_index = 0;
  double share = 0.0;
  std::vector<int> embedding;  // template atom -> gt atom
};

struct TemplateCertificate {
  int prediction = 0;
  std::vector<TemplatePair> pairs;
};

struct TransitionScore {
  bool template_acc = false;
  bool template_acc_gt_denominator = false;  // share over r_gt's heavy atoms
  bool reactant_acc = false;
  bool combined_acc = false;
  int n_predictions = 0;
  bool failed = false;
  std::optional<TemplateCertificate> certificate;
};

inline constexpr double kTemplateShareThreshold = 0.75;

struct ScoreOptions {
  bool ignore_stereo = false;
};

inline int heavy_atom_count(const Molecule &m, bool skip_wildcards) {
  int n = 0;
  for (const auto &a: m.atoms()) {
    if (skip_wildcards && a.is_wildcard()) continue;
    if (a.kind == AtomKind::kElement && a.element == "H") continue;
    ++n;
  }
  return n;
}

/// |maps(r_t) ∩ maps(r_gt)| over the non-wildcard heavy atoms of r_t, or
/// over the heavy atoms of r_gt when `gt_denominator` is set.
inline double atom_share(const Molecule &r_t, const Molecule &r_gt, bool gt_denominator = false) {
  const int denom = gt_denominator ? heavy_atom_count(r_gt, false) : heavy_atom_count(r_t, true);
  if (denom == 0) return 0.0;
  return static_cast<double>(map_values(r_t).intersection_size(map_values(r_gt))) / denom;
}

/// Sorted canonical strings of every component, maps removed.
inline std::vector<std::string> reactant_key(const std::vector<Molecule> &mols,
                                             const ScoreOptions &opts = {}) {
  std::vector<std::string> key;
  for (const auto &m: mols)
    for (const auto &part: split_components(m)) {
      Molecule clean = strip_maps(part);
      if (opts.ignore_stereo) clean = strip_stereo(clean);
      key.push_back(canonical_smiles(clean));
    }
  std::sort(key.begin(), key.end());
  return key;
}

namespace internal {

// Kuhn's augmenting paths; `adj[g]` lists admissible template indices.
inline bool augment(int g, const std::vector<std::vector<int>> &adj, std::vector<int> &owner,
                    std::vector<char> &visited) {
  for (int t: adj[g]) {
    if (visited[t]) continue;
    visited[t] = 1;
    if (owner[t] < 0 || augment(owner[t], adj, owner, visited)) {
      owner[t] = g;
      return true;
    }
  }
  return false;
}

/// Pairs every gt reactant with a distinct template reactant, or nothing.
inline std::optional<std::vector<TemplatePair>> match_templates(const std::vector<Molecule> &tmpl,
                                                                const std::vector<Molecule> &gt,
                                                                bool gt_denominator) {
  std::vector<std::vector<int>> adj(gt.size());
  for (std::size_t g = 0; g < gt.size(); ++g)
    for (std::size_t t = 0; t < tmpl.size(); ++t)
      if (atom_share(tmpl[t], gt[g], gt_denominator) >= kTemplateShareThreshold &&
          substructure_match(tmpl[t], gt[g]))
        adj[g].push_back(static_cast<int>(t));

  std::vector<int> owner(tmpl.size(), -1);
  for (std::size_t g = 0; g < gt.size(); ++g) {
    std::vector<char> visited(tmpl.size(), 0);
    if (!augment(static_cast<int>(g), adj, owner, visited)) return std::nullopt;
  }
  std::vector<TemplatePair> pairs;
  for (std::size_t t = 0; t < tmpl.size(); ++t)
    if (owner[t] >= 0) {
      const int g = owner[t];
      pairs.push_back({g, static_cast<int>(t), atom_share(tmpl[t], gt[g], gt_denominator),
                       *find_substructure(tmpl[t], gt[g])});
    }
  std::sort(pairs.begin(), pairs.end(),
            [](const TemplatePair &a, const TemplatePair &b) { return a.gt_index < b.gt_index; });
  return pairs;
}

inline std::vector<Molecule> components_of(const std::vector<Molecule> &mols) {
  std::vector<Molecule> out;
  for (const auto &m: mols)
    for (auto &part: split_components(m)) out.push_back(std::move(part));
  return out;
}

}  // namespace internal

/// `r_gt` holds the ground-truth reactants only, reagents excluded. Only
/// predictions marked valid are eligible for either accuracy.
inline TransitionScore score_transition(const std::vector<TransitionPrediction> &preds,
                                        const std::vector<Molecule> &r_gt,
                                        const ScoreOptions &opts = {}) {
  if (r_gt.empty()) throw std::invalid_argument("ground-truth reactants are empty");
  TransitionScore out;
  out.n_predictions = static_cast<int>(preds.size());
  out.failed = preds.empty();

  const auto gt_parts = internal::components_of(r_gt);
  const auto gt_key = reactant_key(gt_parts, opts);
  for (std::size_t k = 0; k < preds.size(); ++k) {
    const auto &p = preds[k];
    if (!p.is_valid) continue;
    if (!p.is_template) {
      if (!out.reactant_acc) out.reactant_acc = reactant_key(p.reactants, opts) == gt_key;
      continue;
    }
    const auto parts = internal::components_of(p.reactants);
    if (!out.template_acc)
      if (auto pairs = internal::match_templates(parts, gt_parts, false)) {
        out.template_acc = true;
        out.certificate = TemplateCertificate{static_cast<int>(k), std::move(*pairs)};
      }
    if (!out.template_acc_gt_denominator && internal::match_templates(parts, gt_parts, true))
      out.template_acc_gt_denominator = true;
  }
  out.combined_acc = out.template_acc || out.reactant_acc;
  return out;
}

}  // namespace rh
