//
// SPDX-License-Identifier: Apache-2.0
//

// Scriptable backend that records concurrency and call counts.

#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "retroharness/llm/backend.hpp"

namespace rh::testing {

class InstrumentedBackend: public Backend {
public:
  /// Replies queued for `label`, served before the default reply.
  void script(const std::string &label, BackendReply reply) {
    std::lock_guard lock(mutex_);
    scripted_[label].push_back(std::move(reply));
  }

  /// Requests for `label` throw instead of answering.
  void poison(const std::string &label) {
    std::lock_guard lock(mutex_);
    poisoned_.insert(label);
  }

  void set_delay(std::chrono::milliseconds d) { delay_ = d; }

  BackendReply send(const ChatRequest &request) override {
    const int now = ++in_flight_;
    int seen = max_in_flight_.load();
    while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {}
    ++calls_;
    struct Leave {
      std::atomic<int> &n;
      ~Leave() { --n; }
    } leave{in_flight_};

    std::this_thread::sleep_for(delay_);
    std::lock_guard lock(mutex_);
    ++calls_by_label_[request.label];
    if (poisoned_.count(request.label)) throw std::runtime_error("poisoned " + request.label);
    auto &queue = scripted_[request.label];
    if (!queue.empty()) {
      auto r = queue.front();
      queue.pop_front();
      return r;
    }
    return {Transport::kOk, 200, wrap_completion_text(default_text(request))};
  }

  std::string name() const override { return "instrumented"; }

  static std::string default_text(const ChatRequest &request) {
    return "completion for " + request.label + " " + request.digest.substr(0, 12);
  }

  int max_in_flight() const { return max_in_flight_; }
  int calls() const { return calls_; }
  int calls_for(const std::string &label) {
    std::lock_guard lock(mutex_);
    return calls_by_label_[label];
  }

private:
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
  std::atomic<int> calls_{0};
  std::chrono::milliseconds delay_{0};
  std::mutex mutex_;
  std::map<std::string, std::deque<BackendReply>> scripted_;
  std::map<std::string, int> calls_by_label_;
  std::set<std::string> poisoned_;
};

}  // namespace rh::testing
