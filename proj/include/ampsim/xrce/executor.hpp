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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ampsim/sim/clock.hpp"

namespace ampsim::xrce {

// Periodic executor of the RTOS-side client. Writes made by callbacks are
// deferred and leave at the next wakeup; with period 0 the executor is
// event-driven and flushes them before returning.
class SpinExecutor {
 public:
  explicit SpinExecutor(Cycles period) : period_(period) {}

  Cycles period() const { return period_; }
  bool event_driven() const { return period_ == 0; }

  void add_callback(std::function<void()> fn) { callbacks_.push_back(std::move(fn)); }
  void defer(std::function<void()> fn) { deferred_.push_back(std::move(fn)); }

  // Set by the doorbell ISR.
  void mark_pending() { pending_ = true; }
  bool pending() const { return pending_; }

  // One wakeup. Returns the number of deferred writes flushed.
  std::size_t spin_some();

  // First period boundary strictly after `now`.
  Cycles next_wakeup(Cycles now) const;

  std::uint64_t wakeups() const { return wakeups_; }
  std::size_t deferred() const { return deferred_.size(); }

 private:
  std::size_t flush();

  Cycles period_;
  std::vector<std::function<void()>> callbacks_;
  std::vector<std::function<void()>> deferred_;
  bool pending_ = false;
  std::uint64_t wakeups_ = 0;
};

}  // namespace ampsim::xrce
