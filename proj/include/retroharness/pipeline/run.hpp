//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "retroharness/llm/gateway.hpp"
#include "retroharness/metrics/report.hpp"
#include "retroharness/parse/position.hpp"
#include "retroharness/parse/transition.hpp"
#include "retroharness/prompt/render.hpp"
#include "retroharness/reaction/ingest.hpp"
#include "retroharness/reaction/label.hpp"
#include "retroharness/reaction/ontology.hpp"
#include "retroharness/reaction/sampling.hpp"
#include "retroharness/util/files.hpp"

namespace rh {

/// Raised for configuration and I/O faults; per-example model failures are
/// recorded in the run directory instead.
class RunError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string jsonl(const std::vector<nlohmann::ordered_json> &rows) {
  std::string out;
  for (const auto &r: rows) out += r.dump() + "\n";
  return out;
}

/// Reads a dataset and refuses one whose every row was rejected.
inline IngestResult load_records(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path)) throw RunError("input does not exist: " + path.string());
  return ingest_dataset(path);
}

// Labeling, ontology and subsampling.

struct LabelSummary {
  int labeled = 0;
  int rejected = 0;
  int empty_labels = 0;
};

/// Writes `out` (labeled JSONL) and `<out>.rejects.jsonl`.
inline LabelSummary cmd_label(const std::filesystem::path &in, const std::filesystem::path &out) {
  auto data = load_records(in);
  LabelSummary s;
  std::vector<nlohmann::ordered_json> rows, rejects;
  for (auto &r: data.records) {
    const auto label = extract_structural_label(r);
    r.structural_label = label.atoms;
    r.label_kind = std::string(to_string(label.kind));
    s.empty_labels += label.atoms.empty();
    rows.push_back(record_to_json(r));
  }
  for (const auto &rej: data.rejects) rejects.push_back(reject_to_json(rej));
  s.labeled = static_cast<int>(rows.size());
  s.rejected = static_cast<int>(rejects.size());
  write_file_atomic(out, jsonl(rows));
  auto rej_path = out;
  rej_path += ".rejects.jsonl";
  write_file_atomic(rej_path, jsonl(rejects));
  return s;
}

inline Ontology cmd_ontology(const std::filesystem::path &in, Split split,
                             const std::filesystem::path &out) {
  const auto data = load_records(in);
  auto o = build_ontology(data.records, split);
  write_file_atomic(out, ontology_to_json(o).dump(2) + "\n");
  return o;
}

inline std::vector<ReactionRecord> cmd_subsample(const std::filesystem::path &in, int cap,
                                                 std::uint64_t seed,
                                                 std::string_view unclassified_label,
                                                 std::optional<Split> split,
                                                 const std::filesystem::path &out) {
  auto data = load_records(in);
  std::vector<ReactionRecord> pool;
  for (auto &r: data.records)
    if (!split || r.split == *split) pool.push_back(std::move(r));
  auto picked = subsample_eval_set(pool, cap, unclassified_label, seed);
  std::vector<nlohmann::ordered_json> rows;
  for (auto &r: picked) {
    if (!r.structural_label) {
      const auto label = extract_structural_label(r);
      r.structural_label = label.atoms;
      r.label_kind = std::string(to_string(label.kind));
    }
    rows.push_back(record_to_json(r));
  }
  write_file_atomic(out, jsonl(rows));
  return picked;
}

// Model runs.

enum class Arm {
  kPosition,
  kTransition,
};

inline std::string_view to_string(Arm a) { return a == Arm::kPosition ? "position" : "transition"; }

struct RunOptions {
  std::filesystem::path eval_set;
  std::filesystem::path output;  // run directory
  int parallelism = 4;
  std::filesystem::path prompt_dir;  // optional template overrides
  // Position arm.
  std::filesystem::path ontology;
  // Transition arm.
  std::filesystem::path train_set;
  int examples_k = kMaxExamples;
  TransitionVariant variant = TransitionVariant::kFull;
  bool include_reaction_name = true;
  std::uint64_t seed = 0;
};

struct RunSummary {
  int examples = 0;
  int completed = 0;   // completions obtained
  int parsed = 0;      // with at least one usable item
  int failed = 0;
};

inline std::string outcome_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%05zu.json", index);
  return buf;
}

namespace internal {

struct PreparedItem {
  const ReactionRecord *record = nullptr;
  std::optional<RenderedPrompt> prompt;
  std::string render_error;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

inline nlohmann::ordered_json prompt_info(const RenderedPrompt &p) {
  nlohmann::ordered_json j;
  j["template_name"] = p.template_name;
  j["template_digest"] = p.template_digest;
  nlohmann::ordered_json subs = nlohmann::ordered_json::object();
  for (const auto &[k, v]: p.substitution_record) subs[k] = {{"sha256", v.sha256}, {"items", v.items}};
  j["substitutions"] = std::move(subs);
  j["example_count"] = p.example_count;
  return j;
}

inline void check_run_dir(const std::filesystem::path &dir) {
  if (dir.empty()) throw RunError("no output directory given");
  if (std::filesystem::exists(dir / "manifest.jsonl"))
    throw RunError("run directory already holds a run: " + dir.string());
}

/// Sends prepared prompts, parses replies and writes the run directory.
template <typename ParseFn>
RunSummary execute(Arm arm, std::vector<PreparedItem> &items, const Gateway &gateway,
                   const RunOptions &opts, nlohmann::ordered_json config, ParseFn parse) {
  std::vector<RenderedPrompt> prompts;
  std::vector<std::size_t> slot;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].prompt) {
      slot.push_back(i);
      prompts.push_back(*items[i].prompt);
    }
  const auto results = gateway.run_batch(prompts, opts.parallelism);
  std::vector<const CallResult *> by_item(items.size(), nullptr);
  for (std::size_t k = 0; k < slot.size(); ++k) by_item[slot[k]] = &results[k];

  const bool record_latency = gateway.backend().name() != "replay";
  RunSummary summary;
  summary.examples = static_cast<int>(items.size());
  std::vector<nlohmann::ordered_json> manifest;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto &item = items[i];
    const CallResult *call = by_item[i];
    nlohmann::ordered_json o;
    o["index"] = i;
    o["record_id"] = item.record->record_id;
    o["arm"] = to_string(arm);
    for (const auto &[k, v]: item.extra.items()) o[k] = v;
    if (!item.prompt) {
      o["prompt"] = nullptr;
      o["call"] = {{"outcome", "render_error"}, {"message", item.render_error}};
      o["completion"] = nullptr;
      o["parse"] = nullptr;
      ++summary.failed;
      nlohmann::ordered_json m;
      m["stage"] = to_string(arm);
      m["label"] = item.record->record_id;
      m["digest"] = nullptr;
      m["model"] = gateway.config().model_id;
      m["attempts"] = 0;
      m["outcome"] = "render_error";
      m["message"] = item.render_error;
      manifest.push_back(std::move(m));
    } else {
      o["prompt"] = prompt_info(*item.prompt);
      o["request_digest"] = call->digest;
      // Attempts and cache hits live in the manifest so that a warm rerun
      // writes the same outcome files as the cold run.
      nlohmann::ordered_json c = {{"outcome", call->ok() ? "ok" : call->outcome()}};
      if (call->failure) {
        c["status"] = call->failure->status;
        c["message"] = call->failure->message;
      }
      o["call"] = std::move(c);
      auto m = manifest_entry(*call, gateway.config(), to_string(arm));
      if (record_latency && call->completion) m["latency_ms"] = call->completion->latency_ms;
      manifest.push_back(std::move(m));
      if (call->completion) {
        ++summary.completed;
        o["completion"] = call->completion->text;
        o["finish_reason"] = call->completion->finish_reason;
        o["usage"] = call->completion->usage;
        auto parsed = parse(item, call->completion->text);
        if (parsed["failure"].is_null())
          ++summary.parsed;
        else
          ++summary.failed;
        o["parse"] = std::move(parsed);
      } else {
        ++summary.failed;
        o["completion"] = nullptr;
        o["parse"] = nullptr;
      }
    }
    write_file_atomic(opts.output / "outcomes" / outcome_file_name(i), o.dump(2) + "\n");
  }
  config["summary"] = {{"examples", summary.examples},
                       {"completed", summary.completed},
                       {"parsed", summary.parsed},
                       {"failed", summary.failed}};
  write_file_atomic(opts.output / "config.json", config.dump(2) + "\n");
  write_file_atomic(opts.output / "manifest.jsonl", jsonl(manifest));
  return summary;
}

inline nlohmann::ordered_json base_config(Arm arm, const Gateway &gateway, const RunOptions &opts,
                                          const TemplateSet &templates) {
  nlohmann::ordered_json c;
  c["arm"] = to_string(arm);
  c["eval_set"] = opts.eval_set.string();
  c["backend"] = gateway.backend().name();
  c["model"] = model_config_to_json(gateway.config());
  c["parallelism"] = opts.parallelism;
  c["prompt_dir"] = opts.prompt_dir.string();
  nlohmann::ordered_json digests;
  for (const auto &[name, t]: templates.all()) digests[name] = t.digest();
  c["template_digests"] = std::move(digests);
  return c;
}

inline TemplateSet load_templates(const RunOptions &opts) {
  return opts.prompt_dir.empty() ? TemplateSet{} : TemplateSet::with_overrides(opts.prompt_dir);
}

}  // namespace internal

/// Position arm: renders one prompt per eval record, sends the batch and
/// stores each reply with its parse in `opts.output`.
inline RunSummary run_position(const RunOptions &opts, const Gateway &gateway) {
  internal::check_run_dir(opts.output);
  const auto eval = load_records(opts.eval_set);
  if (opts.ontology.empty()) throw RunError("position runs need an ontology");
  const auto ontology = load_ontology(opts.ontology);
  if (ontology.empty()) throw RunError("ontology is empty: " + opts.ontology.string());
  const auto templates = internal::load_templates(opts);

  std::vector<internal::PreparedItem> items;
  for (const auto &r: eval.records) {
    internal::PreparedItem item;
    item.record = &r;
    try {
      item.prompt = render_position_prompt(r.product, ontology, templates);
      item.prompt->label = r.record_id;
    } catch (const PromptError &e) {
      item.render_error = e.what();
    }
    items.push_back(std::move(item));
  }
  std::filesystem::create_directories(opts.output);
  write_file_atomic(opts.output / "ontology.json", ontology_to_json(ontology).dump(2) + "\n");
  write_file_atomic(opts.output / "eval_set.jsonl", [&] {
    std::vector<nlohmann::ordered_json> rows;
    for (const auto &r: eval.records) rows.push_back(record_to_json(r));
    return jsonl(rows);
  }());
  auto config = internal::base_config(Arm::kPosition, gateway, opts, templates);
  config["ontology"] = opts.ontology.string();
  config["ontology_entries"] = ontology.size();
  config["rejected_rows"] = eval.rejects.size();
  return internal::execute(Arm::kPosition, items, gateway, opts, std::move(config),
                           [&](const internal::PreparedItem &item, const std::string &text) {
                             return outcome_to_json(
                                 parse_position_output(text, item.record->product, ontology),
                                 candidate_to_json);
                           });
}

/// Transition arm: the structural label is the reaction center and, unless
/// disabled, the recorded reaction name selects few-shot examples from the
/// train set.
inline RunSummary run_transition(const RunOptions &opts, const Gateway &gateway) {
  internal::check_run_dir(opts.output);
  if (opts.examples_k < 0) throw RunError("examples-k must be >= 0");
  const auto eval = load_records(opts.eval_set);
  std::vector<ReactionRecord> train;
  if (opts.examples_k > 0) {
    if (opts.train_set.empty()) throw RunError("transition runs with examples need a train set");
    train = load_records(opts.train_set).records;
  }
  const auto templates = internal::load_templates(opts);

  std::vector<internal::PreparedItem> items;
  for (const auto &r: eval.records) {
    internal::PreparedItem item;
    item.record = &r;
    ExampleLibrary lib;
    if (opts.include_reaction_name && opts.examples_k > 0)
      lib = sample_examples(train, r.reaction_name, r.record_id, opts.examples_k, opts.seed);
    item.extra["library"] = {{"reaction_name", lib.reaction_name},
                             {"source_ids", lib.source_ids},
                             {"empty", lib.examples.empty()}};
    try {
      const auto s = label_of(r);
      item.extra["reaction_center"] = s.to_vector();
      const std::optional<std::string> name =
          opts.include_reaction_name ? std::optional<std::string>(r.reaction_name) : std::nullopt;
      item.prompt = render_transition_prompt(r.product, s, name, lib, opts.variant, templates);
      item.prompt->label = r.record_id;
    } catch (const PromptError &e) {
      item.render_error = e.what();
    }
    items.push_back(std::move(item));
  }
  std::filesystem::create_directories(opts.output);
  write_file_atomic(opts.output / "eval_set.jsonl", [&] {
    std::vector<nlohmann::ordered_json> rows;
    for (const auto &r: eval.records) rows.push_back(record_to_json(r));
    return jsonl(rows);
  }());
  auto config = internal::base_config(Arm::kTransition, gateway, opts, templates);
  config["train_set"] = opts.train_set.string();
  config["examples_k"] = opts.examples_k;
  config["prompt_variant"] = opts.variant == TransitionVariant::kFull ? "full" : "short";
  config["include_reaction_name"] = opts.include_reaction_name;
  config["seed"] = opts.seed;
  config["rejected_rows"] = eval.rejects.size();
  return internal::execute(Arm::kTransition, items, gateway, opts, std::move(config),
                           [&](const internal::PreparedItem &item, const std::string &text) {
                             return outcome_to_json(parse_transition_output(text, item.record->product),
                                                    prediction_to_json);
                           });
}

// Evaluation.

struct EvaluateOptions {
  std::filesystem::path run_dir;
  std::filesystem::path ground_truth;  // defaults to the run's eval_set.jsonl snapshot
  std::filesystem::path output;        // defaults to run_dir
  bool ignore_stereo = false;
  std::string unclassified_label = kDefaultUnclassifiedLabel;
};

struct EvaluateResult {
  Arm arm = Arm::kPosition;
  std::optional<PositionReport> position;
  std::optional<TransitionReport> transition;
  std::string report_json;
  std::string summary;
};

/// Re-parses every stored completion, scores it against the ground truth and
/// writes report.json, rows.csv, the confusion matrices and summary.txt.
inline EvaluateResult evaluate_run(const EvaluateOptions &opts) {
  const auto &dir = opts.run_dir;
  if (!std::filesystem::exists(dir / "config.json")) throw RunError("not a run directory: " + dir.string());
  const auto config = nlohmann::json::parse(read_file(dir / "config.json"));
  const std::string arm_name = config.value("arm", "");
  if (arm_name != "position" && arm_name != "transition") throw RunError("unknown arm in config.json");

  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir / "outcomes"))
    for (const auto &e: std::filesystem::directory_iterator(dir / "outcomes"))
      if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw RunError("run directory has no outcomes: " + dir.string());

  const auto gt_path = opts.ground_truth.empty() ? dir / "eval_set.jsonl" : opts.ground_truth;
  const auto gt = load_records(gt_path);
  std::map<std::string, const ReactionRecord *> by_id;
  for (const auto &r: gt.records) by_id[r.record_id] = &r;

  Ontology ontology;
  if (arm_name == "position") ontology = load_ontology(dir / "ontology.json");
  const ScoreOptions score_opts{opts.ignore_stereo};

  std::vector<PositionRow> prows;
  std::vector<TransitionRow> trows;
  for (const auto &f: files) {
    const auto o = nlohmann::json::parse(read_file(f));
    const std::string id = o.at("record_id").get<std::string>();
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw RunError("record " + id + " is missing from the ground truth");
    const ReactionRecord &r = *it->second;
    const bool has_text = o.contains("completion") && o["completion"].is_string();
    std::string failure;
    if (!has_text) failure = o.at("call").value("outcome", "no_completion");

    if (arm_name == "position") {
      PositionRow row{id, r.reaction_name, r.reaction_class, {}, {}};
      const auto s_gt = label_of(r);
      if (s_gt.empty()) throw RunError("record " + id + " has an empty structural label");
      std::vector<DisconnectionCandidate> cands;
      if (has_text) {
        auto parsed = parse_position_output(o["completion"].get<std::string>(), r.product, ontology);
        if (parsed.failure) failure = std::string(to_string(*parsed.failure));
        cands = std::move(parsed.ok);
      }
      row.score = score_position(cands, s_gt, r.reaction_name);
      if (row.score.predicted_name)
        if (const auto cls = ontology.class_of(*row.score.predicted_name)) row.score.predicted_class = *cls;
      row.failure_class = row.score.failed ? failure : "";
      prows.push_back(std::move(row));
    } else {
      TransitionRow row{id, r.reaction_name, r.reaction_class, {}, {}, 0};
      if (o.contains("library") && o["library"].contains("source_ids"))
        row.example_count = static_cast<int>(o["library"]["source_ids"].size());
      std::vector<TransitionPrediction> preds;
      if (has_text) {
        auto parsed = parse_transition_output(o["completion"].get<std::string>(), r.product);
        if (parsed.failure) failure = std::string(to_string(*parsed.failure));
        preds = std::move(parsed.ok);
      }
      row.score = score_transition(preds, r.reactants, score_opts);
      row.failure_class = row.score.failed ? failure : "";
      trows.push_back(std::move(row));
    }
  }

  const auto out_dir = opts.output.empty() ? dir : opts.output;
  EvaluateResult res;
  if (arm_name == "position") {
    res.arm = Arm::kPosition;
    res.position = aggregate_position(prows, opts.unclassified_label);
    auto j = report_to_json(*res.position);
    j["ignore_stereo"] = opts.ignore_stereo;
    res.report_json = j.dump(2) + "\n";
    res.summary = summary_text(*res.position);
    write_file_atomic(out_dir / "rows.csv", rows_to_csv(prows));
    write_file_atomic(out_dir / "confusion_class.csv", res.position->confusion_class.to_csv());
    write_file_atomic(out_dir / "confusion_name.csv", res.position->confusion_name.to_csv());
  } else {
    res.arm = Arm::kTransition;
    res.transition = aggregate_transition(trows);
    auto j = report_to_json(*res.transition);
    j["ignore_stereo"] = opts.ignore_stereo;
    res.report_json = j.dump(2) + "\n";
    res.summary = summary_text(*res.transition);
    write_file_atomic(out_dir / "rows.csv", rows_to_csv(trows));
  }
  write_file_atomic(out_dir / "report.json", res.report_json);
  write_file_atomic(out_dir / "summary.txt", res.summary);
  return res;
}

/// Writes the three templates as `<name>.txt` plus their digests.
inline void export_prompts(const std::filesystem::path &dir, const TemplateSet &templates = {}) {
  nlohmann::ordered_json digests;
  for (const auto &[name, t]: templates.all()) {
    write_file_atomic(dir / (name + ".txt"), t.body);
    digests[name] = t.digest();
  }
  write_file_atomic(dir / "digests.json", digests.dump(2) + "\n");
}

}  // namespace rh
