//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cctype>
#include <filesystem>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "retroharness/llm/backend.hpp"
#include "retroharness/llm/config.hpp"
#include "retroharness/prompt/render.hpp"
#include "retroharness/util/digest.hpp"
#include "retroharness/util/files.hpp"

namespace rh {

struct Completion {
  std::string request_digest;
  std::string model_id;
  std::string text;
  std::string finish_reason;
  long long latency_ms = 0;
  nlohmann::json usage;  // provider token counts, null when absent

  bool operator==(const Completion &) const = default;
};

inline nlohmann::ordered_json completion_to_json(const Completion &c) {
  nlohmann::ordered_json j;
  j["request_digest"] = c.request_digest;
  j["model_id"] = c.model_id;
  j["text"] = c.text;
  j["finish_reason"] = c.finish_reason;
  j["latency_ms"] = c.latency_ms;
  j["usage"] = c.usage;
  return j;
}

inline Completion completion_from_json(const nlohmann::json &j) {
  Completion c;
  c.request_digest = j.at("request_digest").get<std::string>();
  c.model_id = j.value("model_id", "");
  c.text = j.at("text").get<std::string>();
  c.finish_reason = j.value("finish_reason", "");
  c.latency_ms = j.value("latency_ms", 0LL);
  c.usage = j.contains("usage") ? j["usage"] : nlohmann::json(nullptr);
  return c;
}

enum class FailureKind {
  kExhaustedRetries,
  kAuth,
  kContextLength,
  kRejected,     // any other non-retryable status
  kBadResponse,  // 200 whose body is not a usable completion
  kBackendFault, // the backend threw
};

inline std::string_view to_string(FailureKind k) {
  switch (k) {
  case FailureKind::kExhaustedRetries: return "exhausted_retries";
  case FailureKind::kAuth: return "auth_error";
  case FailureKind::kContextLength: return "context_length";
  case FailureKind::kRejected: return "rejected";
  case FailureKind::kBadResponse: return "bad_response";
  case FailureKind::kBackendFault: return "backend_fault";
  }
  return "unknown";
}

struct GatewayFailure {
  FailureKind kind;
  int status = 0;
  std::string message;
};

struct CallResult {
  std::string label;
  std::string digest;
  std::optional<Completion> completion;
  std::optional<GatewayFailure> failure;
  int attempts = 0;
  bool from_cache = false;

  bool ok() const { return completion.has_value(); }
  std::string outcome() const {
    if (completion) return from_cache ? "cached" : "ok";
    return std::string(to_string(failure->kind));
  }
};

/// Stable across runs: hashes the prompt text, its template digest, the
/// model id and every request parameter that can change the answer.
inline std::string request_digest(const RenderedPrompt &prompt, const ModelConfig &cfg) {
  nlohmann::json key;
  key["prompt"] = prompt.text;
  key["template_digest"] = prompt.template_digest;
  key["model_id"] = cfg.model_id;
  key["max_output_tokens"] = cfg.max_output_tokens;
  key["thinking_budget"] = thinking_to_json(cfg.thinking_budget);
  key["sampling"] = cfg.sampling;
  key["extensions"] = cfg.extensions;
  return sha256_hex(key.dump());  // nlohmann::json keeps object keys sorted
}

/// Content-addressed store of completions, one `<digest>.json` per entry.
/// An empty directory path disables caching.
class ResponseCache {
public:
  ResponseCache() = default;
  explicit ResponseCache(std::filesystem::path dir): dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }

  std::optional<Completion> get(const std::string &digest) const {
    if (!enabled()) return std::nullopt;
    const auto path = dir_ / (digest + ".json");
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
      auto c = completion_from_json(nlohmann::json::parse(read_file(path)));
      if (c.request_digest != digest) return std::nullopt;
      return c;
    } catch (const std::exception &) {
      return std::nullopt;  // unreadable entries are refetched and overwritten
    }
  }

  void put(const Completion &c) const {
    if (enabled())
      write_file_atomic(dir_ / (c.request_digest + ".json"), completion_to_json(c).dump(2) + "\n");
  }

private:
  std::filesystem::path dir_;
};

inline bool mentions_context_length(std::string body) {
  std::transform(body.begin(), body.end(), body.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const char *marker: {"context_length", "context length", "context window",
                            "maximum context", "too many tokens", "prompt is too long"})
    if (body.find(marker) != std::string::npos) return true;
  return false;
}

inline bool is_retryable(const BackendReply &r) {
  return r.transport != Transport::kOk || r.status == 408 || r.status == 429 || r.status >= 500;
}

using Sleeper = std::function<void(std::chrono::milliseconds)>;

inline void real_sleep(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

/// Sends rendered prompts through a backend with retries and caching.
/// Safe to share between threads when the backend is.
class Gateway {
public:
  Gateway(Backend &backend, ModelConfig cfg, ResponseCache cache = {}, Sleeper sleeper = real_sleep)
      : backend_(backend), cfg_(std::move(cfg)), cache_(std::move(cache)),
        sleeper_(std::move(sleeper)) {
    validate(cfg_);
  }

  const ModelConfig &config() const { return cfg_; }
  const Backend &backend() const { return backend_; }

  CallResult complete(const RenderedPrompt &prompt) const {
    CallResult out;
    out.label = prompt.label;
    out.digest = request_digest(prompt, cfg_);
    if (auto hit = cache_.get(out.digest)) {
      out.completion = std::move(hit);
      out.from_cache = true;
      return out;
    }

    ChatRequest req{out.digest, prompt.label, build_request_body(prompt.text, cfg_), &cfg_};
    BackendReply reply;
    for (out.attempts = 1;; ++out.attempts) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        reply = backend_.send(req);
      } catch (const std::exception &e) {
        out.failure = GatewayFailure{FailureKind::kBackendFault, 0, e.what()};
        return out;
      }
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - t0);
      if (!is_retryable(reply)) {
        finish(out, reply, elapsed.count());
        return out;
      }
      if (out.attempts >= cfg_.retry.max_attempts) {
        out.failure = GatewayFailure{FailureKind::kExhaustedRetries, reply.status,
                                     reply.body.substr(0, 500)};
        return out;
      }
      sleeper_(std::chrono::milliseconds(cfg_.retry.delay_ms(out.attempts)));
    }
  }

  /// Completes every item with at most `parallelism` requests in flight.
  /// Results come back in input order; failures stay per item.
  std::vector<CallResult> run_batch(const std::vector<RenderedPrompt> &items,
                                    int parallelism) const {
    if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
    std::vector<CallResult> results(items.size());
    std::atomic<std::size_t> next{0};
    std::mutex fault_mutex;
    std::exception_ptr fault;  // I/O faults (e.g. cache writes) abort the batch
    auto worker = [&] {
      try {
        for (std::size_t i = next++; i < items.size(); i = next++) results[i] = complete(items[i]);
      } catch (...) {
        std::lock_guard lock(fault_mutex);
        if (!fault) fault = std::current_exception();
        next = items.size();
      }
    };
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(parallelism), items.size());
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    pool.clear();
    if (fault) std::rethrow_exception(fault);
    return results;
  }

private:
  void finish(CallResult &out, const BackendReply &reply, long long latency_ms) const {
    if (reply.status == 401 || reply.status == 403) {
      out.failure = GatewayFailure{FailureKind::kAuth, reply.status, reply.body.substr(0, 500)};
      return;
    }
    if (reply.status != 200) {
      const bool ctx = (reply.status == 400 || reply.status == 413) &&
                       mentions_context_length(reply.body);
      out.failure = GatewayFailure{ctx ? FailureKind::kContextLength : FailureKind::kRejected,
                                   reply.status, reply.body.substr(0, 500)};
      return;
    }
    try {
      const auto j = nlohmann::json::parse(reply.body);
      const auto &choice = j.at("choices").at(0);
      const auto &content = choice.at("message").at("content");
      Completion c;
      c.request_digest = out.digest;
      c.model_id = cfg_.model_id;
      c.text = content.is_string() ? content.get<std::string>() : std::string();
      if (choice.contains("finish_reason") && choice["finish_reason"].is_string())
        c.finish_reason = choice["finish_reason"].get<std::string>();
      c.latency_ms = latency_ms;
      c.usage = j.contains("usage") ? j["usage"] : nlohmann::json(nullptr);
      cache_.put(c);
      out.completion = std::move(c);
    } catch (const nlohmann::json::exception &e) {
      out.failure = GatewayFailure{FailureKind::kBadResponse, 200, e.what()};
    }
  }

  Backend &backend_;
  ModelConfig cfg_;
  ResponseCache cache_;
  Sleeper sleeper_;
};

/// One manifest line per request.
inline nlohmann::ordered_json manifest_entry(const CallResult &r, const ModelConfig &cfg,
                                             std::string_view stage) {
  nlohmann::ordered_json j;
  j["stage"] = stage;
  j["label"] = r.label;
  j["digest"] = r.digest;
  j["model"] = cfg.model_id;
  j["attempts"] = r.attempts;
  j["outcome"] = r.outcome();
  if (r.failure) {
    j["status"] = r.failure->status;
    j["message"] = r.failure->message;
  }
  return j;
}

}  // namespace rh
