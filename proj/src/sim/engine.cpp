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

#include "ampsim/sim/engine.hpp"

#include <string>

namespace ampsim {

Engine::Engine(EngineOptions options)
    : clock_(options.freq_hz),
      jitter_(options.seed),
      max_events_per_cycle_(options.max_events_per_cycle) {}

EventHandle Engine::schedule(Cycles delay, std::string src, std::string kind,
                             nlohmann::json payload, std::function<void()> action) {
  return schedule_at(now() + delay, std::move(src), std::move(kind),
                     std::move(payload), std::move(action));
}

EventHandle Engine::schedule_at(Cycles when, std::string src, std::string kind,
                                nlohmann::json payload,
                                std::function<void()> action) {
  if (when < now()) throw std::invalid_argument("cannot schedule in the past");
  Event ev;
  ev.fire_at = when;
  ev.seq = next_seq_++;
  ev.src = std::move(src);
  ev.kind = std::move(kind);
  ev.payload = payload.is_null() ? nlohmann::json::object() : std::move(payload);
  ev.action = std::move(action);
  ev.traced = true;
  EventHandle handle{ev.fire_at, ev.seq, true};
  queue_.emplace(Key{ev.fire_at, ev.seq}, std::move(ev));
  ++scheduled_;
  return handle;
}

EventHandle Engine::schedule_silent(Cycles delay, std::function<void()> action) {
  Event ev;
  ev.fire_at = now() + delay;
  ev.seq = next_seq_++;
  ev.action = std::move(action);
  ev.traced = false;
  EventHandle handle{ev.fire_at, ev.seq, true};
  queue_.emplace(Key{ev.fire_at, ev.seq}, std::move(ev));
  ++scheduled_;
  return handle;
}

bool Engine::cancel(const EventHandle& handle) {
  if (!handle.valid) return false;
  auto it = queue_.find(Key{handle.fire_at, handle.seq});
  if (it == queue_.end()) return false;
  queue_.erase(it);
  ++cancelled_;
  return true;
}

void Engine::fire(Event& event) {
  clock_.advance_to(event.fire_at);
  if (event.fire_at == burst_cycle_) {
    if (++burst_count_ > max_events_per_cycle_) {
      throw LivelockError("more than " + std::to_string(max_events_per_cycle_) +
                          " events at cycle " + std::to_string(event.fire_at));
    }
  } else {
    burst_cycle_ = event.fire_at;
    burst_count_ = 1;
  }
  ++fired_;
  if (event.traced) {
    trace_.append(event.fire_at, event.src, event.kind, event.payload);
  }
  if (event.action) event.action();
}

bool Engine::step() {
  if (queue_.empty()) return false;
  auto node = queue_.extract(queue_.begin());
  fire(node.mapped());
  return true;
}

const TraceLog& Engine::run_until(Cycles limit) {
  if (limit < now()) throw std::invalid_argument("run_until: limit is in the past");
  while (!queue_.empty() && queue_.begin()->first.first <= limit) {
    step();
  }
  clock_.advance_to(limit);
  return trace_;
}

void Engine::run_idle(Cycles limit) {
  while (!queue_.empty() && queue_.begin()->first.first <= limit) {
    step();
  }
}

void Engine::record(std::string src, std::string event, nlohmann::json data) {
  trace_.append(now(), std::move(src), std::move(event), std::move(data));
}

std::optional<Cycles> Engine::next_event_time() const {
  if (queue_.empty()) return std::nullopt;
  return queue_.begin()->first.first;
}

}  // namespace ampsim
