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

#include "ampsim/xrce/transport.hpp"

#include <stdexcept>

namespace ampsim::xrce {

Ring::Ring(std::size_t slots, std::size_t slot_size) : slots_(slots), slot_size_(slot_size) {
  if (slots == 0 || slot_size < kHeaderSize) {
    throw std::invalid_argument("ring needs at least one slot of header size");
  }
}

PushResult Ring::push(std::span<const std::uint8_t> frame) {
  if (frame.size() > slot_size_) return PushResult::kOversize;
  if (full()) return PushResult::kFull;
  q_.emplace_back(frame.begin(), frame.end());
  return PushResult::kOk;
}

std::optional<Bytes> Ring::pop() {
  if (q_.empty()) return std::nullopt;
  Bytes out = std::move(q_.front());
  q_.pop_front();
  return out;
}

RingTransport::RingTransport(std::size_t slots, std::size_t slot_size)
    : to_agent_(slots, slot_size), to_client_(slots, slot_size) {}

PushResult RingTransport::send_to_agent(std::span<const std::uint8_t> frame) {
  const PushResult r = to_agent_.push(frame);
  if (r == PushResult::kOk && agent_notify_) agent_notify_();
  return r;
}

PushResult RingTransport::send_to_client(std::span<const std::uint8_t> frame) {
  const bool was_empty = to_client_.empty();
  const PushResult r = to_client_.push(frame);
  if (r == PushResult::kOk && was_empty) {
    ++doorbells_;
    if (doorbell_) doorbell_();
  }
  return r;
}

}  // namespace ampsim::xrce
