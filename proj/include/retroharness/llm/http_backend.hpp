//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdlib>
#include <string>

#include <httplib.h>

#include "retroharness/llm/backend.hpp"

namespace rh {

/// HTTPS chat-completions client. The bearer token is read from the
/// environment variable named in the config at each request.
class HttpBackend: public Backend {
public:
  BackendReply send(const ChatRequest &request) override {
    const ModelConfig &cfg = *request.config;
    const auto parts = split_endpoint(cfg.endpoint);
    const char *key = std::getenv(cfg.api_key_env.c_str());

    httplib::Client client(parts.scheme + "://" + parts.host);
    const auto seconds = cfg.timeout_ms / 1000;
    const auto micros = (cfg.timeout_ms % 1000) * 1000;
    client.set_connection_timeout(30, 0);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);

    httplib::Headers headers;
    if (key && *key) headers.emplace("Authorization", std::string("Bearer ") + key);
    const auto res = client.Post(parts.path, headers, request.body.dump(), "application/json");
    if (!res) {
      const auto err = res.error();
      const Transport t = err == httplib::Error::Read || err == httplib::Error::Write ||
                                  err == httplib::Error::ConnectionTimeout
                              ? Transport::kTimeout
                              : Transport::kNetworkError;
      return {t, 0, httplib::to_string(err)};
    }
    return {Transport::kOk, res->status, res->body};
  }

  std::string name() const override { return "live"; }
};

}  // namespace rh
