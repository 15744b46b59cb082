//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "retroharness/llm/config.hpp"
#include "retroharness/prompt/render.hpp"
#include "retroharness/util/files.hpp"

namespace rh {

struct ChatRequest {
  std::string digest;
  std::string label;         // prompt label, e.g. the record id
  nlohmann::json body;       // chat-completions request body
  const ModelConfig *config = nullptr;
};

enum class Transport {
  kOk,
  kTimeout,
  kNetworkError,
};

struct BackendReply {
  Transport transport = Transport::kOk;
  int status = 0;
  std::string body;  // chat-completions response JSON, or an error body
};

/// One request, one reply. Implementations must be callable from several
/// threads at once.
class Backend {
public:
  virtual ~Backend() = default;
  virtual BackendReply send(const ChatRequest &request) = 0;
  virtual std::string name() const = 0;
};

/// Chat-completions request body for a single user message.
inline nlohmann::json build_request_body(const std::string &prompt_text, const ModelConfig &cfg) {
  nlohmann::json body;
  body["model"] = cfg.model_id;
  body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt_text}}});
  body["max_tokens"] = cfg.max_output_tokens;
  if (cfg.thinking_budget) {
    if (const auto *n = std::get_if<long long>(&*cfg.thinking_budget))
      body["thinking"] = {{"type", "enabled"}, {"budget_tokens", *n}};
    else
      body["reasoning_effort"] = std::get<std::string>(*cfg.thinking_budget);
  }
  for (const auto &[k, v]: cfg.sampling.items()) body[k] = v;
  for (const auto &[k, v]: cfg.extensions.items()) body[k] = v;
  return body;
}

/// Minimal chat-completions response around `text`.
inline std::string wrap_completion_text(const std::string &text,
                                        const std::string &finish_reason = "stop") {
  nlohmann::json j;
  j["choices"] = nlohmann::json::array(
      {{{"index", 0},
        {"message", {{"role", "assistant"}, {"content", text}}},
        {"finish_reason", finish_reason}}});
  return j.dump();
}

/// Serves canned completions from a fixture directory. Lookup order:
/// `<digest>.txt`, `<digest>.json`, `<label>.txt`, `<label>.json`. A `.txt`
/// file holds the completion text, a `.json` file a full response body.
/// Missing fixtures answer 404.
class ReplayBackend: public Backend {
public:
  explicit ReplayBackend(std::filesystem::path dir): dir_(std::move(dir)) {}

  BackendReply send(const ChatRequest &request) override {
    for (const auto &stem: {request.digest, request.label}) {
      if (stem.empty()) continue;
      const auto txt = dir_ / (stem + ".txt");
      if (std::filesystem::exists(txt)) return {Transport::kOk, 200, wrap_completion_text(read_file(txt))};
      const auto js = dir_ / (stem + ".json");
      if (std::filesystem::exists(js)) return {Transport::kOk, 200, read_file(js)};
    }
    const nlohmann::json err = {
        {"error", {{"message", "no replay fixture for " + request.label + " / " + request.digest}}}};
    return {Transport::kOk, 404, err.dump()};
  }

  std::string name() const override { return "replay"; }

private:
  std::filesystem::path dir_;
};

}  // namespace rh
