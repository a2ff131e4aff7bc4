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
#include <deque>
#include <functional>
#include <optional>
#include <span>

#include "ampsim/xrce/wire.hpp"

namespace ampsim::xrce {

// Sender-side error: the destination ring has no free slot.
class BackpressureError : public XrceError {
 public:
  using XrceError::XrceError;
};

enum class PushResult : std::uint8_t { kOk, kFull, kOversize };

// Fixed-slot single-writer ring in shared memory.
class Ring {
 public:
  Ring(std::size_t slots, std::size_t slot_size);

  std::size_t slots() const { return slots_; }
  std::size_t slot_size() const { return slot_size_; }
  std::size_t size() const { return q_.size(); }
  bool empty() const { return q_.empty(); }
  bool full() const { return q_.size() == slots_; }

  PushResult push(std::span<const std::uint8_t> frame);
  std::optional<Bytes> pop();

 private:
  std::size_t slots_;
  std::size_t slot_size_;
  std::deque<Bytes> q_;
};

// Two rings plus a doorbell raised when the client-bound ring goes from
// empty to non-empty.
class RingTransport {
 public:
  RingTransport(std::size_t slots, std::size_t slot_size);

  Ring& to_agent() { return to_agent_; }
  Ring& to_client() { return to_client_; }
  const Ring& to_agent() const { return to_agent_; }
  const Ring& to_client() const { return to_client_; }

  void set_doorbell(std::function<void()> fn) { doorbell_ = std::move(fn); }
  // Invoked after every successful client write.
  void set_agent_notify(std::function<void()> fn) { agent_notify_ = std::move(fn); }

  PushResult send_to_agent(std::span<const std::uint8_t> frame);
  PushResult send_to_client(std::span<const std::uint8_t> frame);

  std::uint64_t doorbells() const { return doorbells_; }

 private:
  Ring to_agent_;
  Ring to_client_;
  std::function<void()> doorbell_;
  std::function<void()> agent_notify_;
  std::uint64_t doorbells_ = 0;
};

}  // namespace ampsim::xrce
