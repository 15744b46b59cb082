//
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "retroharness/llm/backend.hpp"
#include "retroharness/llm/http_backend.hpp"
#include "retroharness/pipeline/run.hpp"

namespace {

enum ExitCode {
  kOk = 0,
  kRuntimeError = 1,
  kUsageError = 2,  // CLI11 parse errors use their own non-zero codes
  kAuthError = 3,
};

struct ModelFlags {
  std::string model = "gpt-4o";
  std::string endpoint = rh::ModelConfig{}.endpoint;
  std::string api_key_env = "OPENAI_API_KEY";
  int max_tokens = rh::ModelConfig{}.max_output_tokens;
  std::string thinking_budget;
  std::string sampling;     // JSON object
  std::string extra_body;   // JSON object
  int max_attempts = rh::RetryPolicy{}.max_attempts;
  long long timeout_ms = rh::ModelConfig{}.timeout_ms;
  std::string backend = "live";
  std::string replay_dir;
  std::string cache_dir;
};

void add_model_flags(CLI::App &cmd, ModelFlags &f) {
  cmd.add_option("--model", f.model, "Model id sent to the endpoint")->capture_default_str();
  cmd.add_option("--endpoint", f.endpoint, "Chat-completions URL")->capture_default_str();
  cmd.add_option("--api-key-env", f.api_key_env, "Environment variable holding the API key")
      ->capture_default_str();
  cmd.add_option("--max-tokens", f.max_tokens, "Maximum output tokens")->check(CLI::PositiveNumber);
  cmd.add_option("--thinking-budget", f.thinking_budget,
                 "Reasoning budget: a token count or an effort label such as high");
  cmd.add_option("--sampling", f.sampling, "JSON object of sampling parameters, e.g. {\"temperature\":0}");
  cmd.add_option("--extra-body", f.extra_body, "JSON object merged into every request body");
  cmd.add_option("--max-attempts", f.max_attempts, "Attempts per request")->check(CLI::PositiveNumber);
  cmd.add_option("--timeout-ms", f.timeout_ms, "Per-request timeout")->check(CLI::PositiveNumber);
  cmd.add_option("--backend", f.backend, "live or replay")
      ->check(CLI::IsMember({"live", "replay"}))
      ->capture_default_str();
  cmd.add_option("--replay-dir", f.replay_dir, "Canned completions for the replay backend");
  cmd.add_option("--cache-dir", f.cache_dir, "Response cache; reruns skip cached requests");
}

nlohmann::json json_object_flag(const std::string &text, const char *flag) {
  if (text.empty()) return nlohmann::json::object();
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw rh::ConfigError(std::string(flag) + " must be a JSON object");
  return j;
}

rh::ModelConfig model_config(const ModelFlags &f) {
  rh::ModelConfig cfg;
  cfg.model_id = f.model;
  cfg.endpoint = f.endpoint;
  cfg.api_key_env = f.api_key_env;
  cfg.max_output_tokens = f.max_tokens;
  if (!f.thinking_budget.empty()) cfg.thinking_budget = rh::parse_thinking_budget(f.thinking_budget);
  cfg.sampling = json_object_flag(f.sampling, "--sampling");
  cfg.extensions = json_object_flag(f.extra_body, "--extra-body");
  cfg.retry.max_attempts = f.max_attempts;
  cfg.timeout_ms = f.timeout_ms;
  rh::validate(cfg);
  return cfg;
}

struct AuthMissing: std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::unique_ptr<rh::Backend> make_backend(const ModelFlags &f, const rh::ModelConfig &cfg) {
  if (f.backend == "replay") {
    if (f.replay_dir.empty()) throw rh::ConfigError("--backend replay needs --replay-dir");
    if (!std::filesystem::is_directory(f.replay_dir))
      throw rh::ConfigError("replay directory does not exist: " + f.replay_dir);
    return std::make_unique<rh::ReplayBackend>(f.replay_dir);
  }
  const char *key = std::getenv(cfg.api_key_env.c_str());
  if (!key || !*key) throw AuthMissing("environment variable " + cfg.api_key_env + " is not set");
  return std::make_unique<rh::HttpBackend>();
}

rh::TransitionVariant parse_variant(const std::string &s) {
  return s == "short" ? rh::TransitionVariant::kShort : rh::TransitionVariant::kFull;
}

void print_run(const rh::RunSummary &s, const std::filesystem::path &dir) {
  std::cout << "examples " << s.examples << ", completed " << s.completed << ", parsed " << s.parsed
            << ", failed " << s.failed << "\nrun directory: " << dir.string() << "\n";
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Single-step retrosynthesis evaluation with language models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "retroharness 0.1.0");

  // label
  std::string in, out;
  auto *label = app.add_subcommand("label", "Extract structural labels from an atom-mapped dataset");
  label->add_option("--input", in, "Dataset (.jsonl, .json, .csv, .tsv)")->required();
  label->add_option("--output", out, "Labeled JSONL; rejects go to <output>.rejects.jsonl")->required();

  // ontology
  std::string split = "train";
  auto *onto = app.add_subcommand("ontology", "Build the reaction-name ontology from one split");
  onto->add_option("--input", in)->required();
  onto->add_option("--output", out)->required();
  onto->add_option("--split", split)->check(CLI::IsMember({"train", "val", "test"}))->capture_default_str();

  // subsample
  int cap = 50;
  std::uint64_t seed = 0;
  std::string unclassified = rh::kDefaultUnclassifiedLabel;
  std::string sub_split;
  auto *sub = app.add_subcommand("subsample", "Draw a balanced evaluation subset");
  sub->add_option("--input", in)->required();
  sub->add_option("--output", out)->required();
  sub->add_option("--cap", cap, "Records per reaction name")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--seed", seed)->capture_default_str();
  sub->add_option("--split", sub_split, "Only draw from this split")->check(CLI::IsMember({"train", "val", "test"}));
  sub->add_option("--unclassified-label", unclassified)->capture_default_str();

  // run-position / run-transition
  rh::RunOptions run;
  ModelFlags mflags;
  std::string ontology, train, prompt_dir, variant = "full";
  auto *rpos = app.add_subcommand("run-position", "Ask the model for reaction-center positions");
  rpos->add_option("--input", run.eval_set, "Evaluation set")->required();
  rpos->add_option("--ontology", ontology, "Ontology JSON from the ontology command")->required();
  rpos->add_option("--output", run.output, "New run directory")->required();
  rpos->add_option("--parallelism", run.parallelism)->check(CLI::PositiveNumber)->capture_default_str();
  rpos->add_option("--prompt-dir", prompt_dir, "Directory of template overrides");
  add_model_flags(*rpos, mflags);

  bool no_name = false;
  auto *rtr = app.add_subcommand("run-transition", "Ask the model for reactants given the reaction center");
  rtr->add_option("--input", run.eval_set, "Evaluation set")->required();
  rtr->add_option("--train", train, "Train set for few-shot examples");
  rtr->add_option("--output", run.output, "New run directory")->required();
  rtr->add_option("--examples-k", run.examples_k, "Few-shot examples per prompt (at most 5)")
      ->check(CLI::Range(0, rh::kMaxExamples))
      ->capture_default_str();
  rtr->add_option("--prompt-variant", variant)->check(CLI::IsMember({"full", "short"}))->capture_default_str();
  rtr->add_flag("--no-reaction-name", no_name, "Withhold the reaction name and examples");
  rtr->add_option("--seed", run.seed)->capture_default_str();
  rtr->add_option("--parallelism", run.parallelism)->check(CLI::PositiveNumber)->capture_default_str();
  rtr->add_option("--prompt-dir", prompt_dir, "Directory of template overrides");
  add_model_flags(*rtr, mflags);

  // evaluate
  rh::EvaluateOptions ev;
  std::string gt, ev_out;
  auto *eval = app.add_subcommand("evaluate", "Score a run directory");
  eval->add_option("--input", ev.run_dir, "Run directory")->required();
  eval->add_option("--ground-truth", gt, "Ground truth; defaults to the run's eval_set.jsonl");
  eval->add_option("--output", ev_out, "Report directory; defaults to the run directory");
  eval->add_flag("--ignore-stereo", ev.ignore_stereo, "Compare reactants without stereo marks");
  eval->add_option("--unclassified-label", ev.unclassified_label)->capture_default_str();

  // prompts export
  auto *prompts = app.add_subcommand("prompts", "Prompt template utilities");
  prompts->require_subcommand(1);
  auto *pexport = prompts->add_subcommand("export", "Write the built-in templates as an override directory");
  pexport->add_option("--output", out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*label) {
      const auto s = rh::cmd_label(in, out);
      std::cout << "labeled " << s.labeled << ", rejected " << s.rejected << ", empty labels "
                << s.empty_labels << "\n";
    } else if (*onto) {
      const auto o = rh::cmd_ontology(in, *rh::parse_split(split), out);
      std::cout << o.size() << " reaction names\n";
    } else if (*sub) {
      const auto picked = rh::cmd_subsample(
          in, cap, seed, unclassified,
          sub_split.empty() ? std::nullopt : rh::parse_split(sub_split), out);
      std::cout << picked.size() << " records\n";
    } else if (*rpos || *rtr) {
      const auto cfg = model_config(mflags);
      auto backend = make_backend(mflags, cfg);
      rh::ResponseCache cache = mflags.cache_dir.empty() ? rh::ResponseCache{}
                                                         : rh::ResponseCache(mflags.cache_dir);
      rh::Gateway gateway(*backend, cfg, std::move(cache));
      run.prompt_dir = prompt_dir;
      if (*rpos) {
        run.ontology = ontology;
        print_run(rh::run_position(run, gateway), run.output);
      } else {
        run.train_set = train;
        run.variant = parse_variant(variant);
        run.include_reaction_name = !no_name;
        print_run(rh::run_transition(run, gateway), run.output);
      }
    } else if (*eval) {
      ev.ground_truth = gt;
      ev.output = ev_out;
      const auto res = rh::evaluate_run(ev);
      std::cout << res.summary;
    } else if (*pexport) {
      rh::export_prompts(out);
      std::cout << "wrote templates to " << out << "\n";
    }
  } catch (const AuthMissing &e) {
    std::cerr << "auth error: " << e.what() << "\n";
    return kAuthError;
  } catch (const rh::ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}
