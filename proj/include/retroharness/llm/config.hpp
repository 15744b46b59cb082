//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

namespace rh {

class ConfigError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thinking budget: a token count or a provider level label such as "high".
using ThinkingBudget = std::variant<long long, std::string>;

struct RetryPolicy {
  int max_attempts = 4;  // total tries, first call included
  int base_delay_ms = 500;
  int max_delay_ms = 16000;

  /// Delay before try `attempt + 1`, where `attempt` >= 1 tries already failed.
  int delay_ms(int attempt) const {
    long long d = base_delay_ms;
    for (int i = 1; i < attempt && d < max_delay_ms; ++i) d *= 2;
    return static_cast<int>(std::min<long long>(d, max_delay_ms));
  }
};

struct ModelConfig {
  std::string model_id;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  int max_output_tokens = 16384;
  std::optional<ThinkingBudget> thinking_budget;
  nlohmann::json sampling = nlohmann::json::object();    // e.g. temperature; empty = provider defaults
  nlohmann::json extensions = nlohmann::json::object();  // merged verbatim into the request body
  std::string api_key_env = "OPENAI_API_KEY";
  int timeout_ms = 600000;
  RetryPolicy retry;
};

struct EndpointParts {
  std::string scheme;  // "http" or "https"
  std::string host;    // host[:port]
  std::string path;    // begins with '/'
};

inline EndpointParts split_endpoint(std::string_view url) {
  const auto sep = url.find("://");
  if (sep == std::string_view::npos) throw ConfigError("endpoint is not absolute: " + std::string(url));
  EndpointParts p;
  p.scheme = std::string(url.substr(0, sep));
  if (p.scheme != "http" && p.scheme != "https")
    throw ConfigError("endpoint scheme must be http or https: " + std::string(url));
  const auto rest = url.substr(sep + 3);
  const auto slash = rest.find('/');
  p.host = std::string(rest.substr(0, slash));
  p.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  if (p.host.empty()) throw ConfigError("endpoint has no host: " + std::string(url));
  return p;
}

inline void validate(const ModelConfig &cfg) {
  if (cfg.model_id.empty()) throw ConfigError("model id is empty");
  if (cfg.max_output_tokens < 1) throw ConfigError("max_output_tokens must be >= 1");
  split_endpoint(cfg.endpoint);
  if (cfg.retry.max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
  if (cfg.retry.base_delay_ms < 0 || cfg.retry.max_delay_ms < cfg.retry.base_delay_ms)
    throw ConfigError("retry delays must satisfy 0 <= base <= max");
  if (cfg.timeout_ms < 1) throw ConfigError("timeout_ms must be >= 1");
  if (!cfg.sampling.is_object()) throw ConfigError("sampling must be a JSON object");
  if (!cfg.extensions.is_object()) throw ConfigError("extensions must be a JSON object");
  if (cfg.thinking_budget)
    if (const auto *n = std::get_if<long long>(&*cfg.thinking_budget); n && *n < 0)
      throw ConfigError("thinking budget must be >= 0");
}

inline nlohmann::json thinking_to_json(const std::optional<ThinkingBudget> &t) {
  if (!t) return nullptr;
  if (const auto *n = std::get_if<long long>(&*t)) return *n;
  return std::get<std::string>(*t);
}

/// Digits parse as a token count, anything else is kept as a level label.
inline ThinkingBudget parse_thinking_budget(std::string_view s) {
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos)
    return std::stoll(std::string(s));
  return std::string(s);
}

/// Fields recorded in run configs and manifests. The API key itself never is.
inline nlohmann::ordered_json model_config_to_json(const ModelConfig &cfg) {
  nlohmann::ordered_json j;
  j["model_id"] = cfg.model_id;
  j["endpoint"] = cfg.endpoint;
  j["max_output_tokens"] = cfg.max_output_tokens;
  j["thinking_budget"] = thinking_to_json(cfg.thinking_budget);
  j["sampling"] = cfg.sampling;
  j["extensions"] = cfg.extensions;
  j["api_key_env"] = cfg.api_key_env;
  j["timeout_ms"] = cfg.timeout_ms;
  j["retry"] = {{"max_attempts", cfg.retry.max_attempts},
                {"base_delay_ms", cfg.retry.base_delay_ms},
                {"max_delay_ms", cfg.retry.max_delay_ms}};
  return j;
}

}  // namespace rh
