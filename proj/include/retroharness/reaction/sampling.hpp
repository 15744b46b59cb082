//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "retroharness/reaction/label.hpp"
#include "retroharness/reaction/record.hpp"
#include "retroharness/util/random.hpp"

namespace rh {

inline constexpr const char *kDefaultUnclassifiedLabel = "OtherReaction";

inline bool is_unclassified(const ReactionRecord &r, std::string_view unclassified_label) {
  return r.reaction_name.empty() ||
         normalize_name(r.reaction_name) == normalize_name(unclassified_label);
}

/// Label stored on the record, or extracted on the fly.
inline AtomMapSet label_of(const ReactionRecord &r) {
  if (r.structural_label) return *r.structural_label;
  return extract_structural_label(r).atoms;
}

/// Balanced evaluation subset: up to `cap` records per named reaction, plus
/// unclassified records in the same proportion they had in the input
/// (rounded to nearest). Records with an empty structural label are skipped.
/// Output keeps input order.
inline std::vector<ReactionRecord> subsample_eval_set(const std::vector<ReactionRecord> &records,
                                                      int cap,
                                                      std::string_view unclassified_label,
                                                      std::uint64_t seed) {
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");

  std::map<std::string, std::vector<std::size_t>> named;
  std::vector<std::size_t> unclassified;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (label_of(records[i]).empty()) continue;
    if (is_unclassified(records[i], unclassified_label))
      unclassified.push_back(i);
    else
      named[records[i].reaction_name].push_back(i);
  }

  std::vector<std::size_t> chosen;
  std::size_t named_total = 0;
  for (const auto &[name, idx]: named) {
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(cap), idx.size());
    for (auto j: sample_indices(idx.size(), k, derive_seed(seed, name))) chosen.push_back(idx[j]);
    named_total += k;
  }

  const std::size_t u_in = unclassified.size();
  std::size_t n_in = u_in;
  for (const auto &[name, idx]: named) n_in += idx.size();
  std::size_t u_out = 0;
  if (u_in > 0) {
    if (named_total == 0) {
      u_out = std::min<std::size_t>(static_cast<std::size_t>(cap), u_in);
    } else {
      const double f = static_cast<double>(u_in) / static_cast<double>(n_in);
      u_out = static_cast<std::size_t>(std::llround(f * static_cast<double>(named_total) / (1.0 - f)));
      u_out = std::min(u_out, u_in);
    }
  }
  for (auto j: sample_indices(u_in, u_out, derive_seed(seed, "\x1f" "unclassified")))
    chosen.push_back(unclassified[j]);

  std::sort(chosen.begin(), chosen.end());
  std::vector<ReactionRecord> out;
  out.reserve(chosen.size());
  for (auto i: chosen) out.push_back(records[i]);
  return out;
}

inline constexpr int kMaxExamples = 5;

struct ExampleLibrary {
  std::string reaction_name;
  std::vector<std::string> examples;  // "product>>reactants"
  std::vector<std::string> source_ids;
  std::uint64_t seed = 0;
};

/// Few-shot examples: up to min(k, 5) train records with exactly this
/// reaction name, never the query record itself.
inline ExampleLibrary sample_examples(const std::vector<ReactionRecord> &records,
                                      std::string_view reaction_name,
                                      std::string_view exclude_id, int k, std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  ExampleLibrary lib;
  lib.reaction_name = std::string(reaction_name);
  lib.seed = seed;
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].split == Split::kTrain && records[i].reaction_name == reaction_name &&
        records[i].record_id != exclude_id)
      pool.push_back(i);
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(std::min(k, kMaxExamples)),
                                          pool.size());
  const std::string key = std::string(reaction_name) + "\x1f" + std::string(exclude_id);
  for (auto j: sample_indices(pool.size(), take, derive_seed(seed, key))) {
    lib.examples.push_back(records[pool[j]].retro_smiles());
    lib.source_ids.push_back(records[pool[j]].record_id);
  }
  return lib;
}

}  // namespace rh
