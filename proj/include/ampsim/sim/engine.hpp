// Copyright 2026 The ampsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "ampsim/sim/clock.hpp"
#include "ampsim/sim/jitter.hpp"
#include "ampsim/sim/trace.hpp"
#include "json.hpp"

namespace ampsim {

class LivelockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Event {
  Cycles fire_at = 0;
  std::uint64_t seq = 0;
  std::string src;
  std::string kind;
  nlohmann::json payload;
  std::function<void()> action;
  // Traced events append (fire_at, src, kind, payload) when they fire.
  bool traced = true;
};

struct EventHandle {
  Cycles fire_at = 0;
  std::uint64_t seq = 0;
  bool valid = false;
};

struct EngineOptions {
  std::uint64_t freq_hz = kDefaultFreqHz;
  std::uint64_t seed = 0;
  std::uint64_t max_events_per_cycle = 10'000;
};

// Discrete-event loop. Single-threaded; independent instances share no
// state and may run on different threads.
class Engine {
 public:
  explicit Engine(EngineOptions options = {});

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  Cycles now() const { return clock_.now(); }
  const SimClock& clock() const { return clock_; }
  TraceLog& trace() { return trace_; }
  const TraceLog& trace() const { return trace_; }
  JitterSource& jitter() { return jitter_; }

  EventHandle schedule(Cycles delay, std::string src, std::string kind,
                       nlohmann::json payload = nlohmann::json::object(),
                       std::function<void()> action = {});
  // Untraced internal event.
  EventHandle schedule_silent(Cycles delay, std::function<void()> action);
  EventHandle schedule_at(Cycles when, std::string src, std::string kind,
                          nlohmann::json payload = nlohmann::json::object(),
                          std::function<void()> action = {});

  // Returns false if the event already fired or was cancelled.
  bool cancel(const EventHandle& handle);

  // Fires the earliest pending event. Returns false if none is pending.
  bool step();

  // Processes every event with fire_at <= limit, then sets the clock to
  // limit. Throws std::invalid_argument if limit < now() and LivelockError
  // if more than max_events_per_cycle events fire at a single cycle.
  const TraceLog& run_until(Cycles limit);

  // Runs until the queue drains or `limit` is reached, whichever is first.
  // The clock stays at the last fired event.
  void run_idle(Cycles limit);

  // Convenience trace append at the current cycle.
  void record(std::string src, std::string event,
              nlohmann::json data = nlohmann::json::object());

  std::uint64_t scheduled_count() const { return scheduled_; }
  std::uint64_t fired_count() const { return fired_; }
  std::uint64_t cancelled_count() const { return cancelled_; }
  std::uint64_t pending_count() const { return queue_.size(); }

  std::optional<Cycles> next_event_time() const;

 private:
  using Key = std::pair<Cycles, std::uint64_t>;

  void fire(Event& event);

  SimClock clock_;
  TraceLog trace_;
  JitterSource jitter_;
  std::map<Key, Event> queue_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t scheduled_ = 0;
  std::uint64_t fired_ = 0;
  std::uint64_t cancelled_ = 0;
  std::uint64_t max_events_per_cycle_;
  Cycles burst_cycle_ = 0;
  std::uint64_t burst_count_ = 0;
};

}  // namespace ampsim
