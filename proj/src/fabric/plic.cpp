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

#include "ampsim/fabric/plic.hpp"

#include <string>

namespace ampsim {

Plic::Plic(std::size_t sources, std::size_t harts)
    : priority_(sources + 1, 0),
      pending_(sources + 1, false),
      claimed_(sources + 1, false),
      claimed_by_(sources + 1, 0),
      input_(sources + 1, false),
      held_edge_(sources + 1, false),
      trigger_(sources + 1, Trigger::kLevel),
      enable_(harts, std::vector<bool>(sources + 1, false)),
      threshold_(harts, 0) {
  if (harts == 0) throw std::invalid_argument("PLIC needs at least one hart");
}

void Plic::check_source(std::uint32_t src) const {
  if (src == 0 || src > sources()) {
    throw std::out_of_range("PLIC source " + std::to_string(src) + " out of range");
  }
}

void Plic::set_priority(std::uint32_t src, std::uint32_t priority) {
  check_source(src);
  priority_[src] = priority;
}

std::uint32_t Plic::priority(std::uint32_t src) const {
  check_source(src);
  return priority_[src];
}

void Plic::set_enable(std::size_t hart, std::uint32_t src, bool enabled) {
  check_source(src);
  enable_.at(hart)[src] = enabled;
}

bool Plic::enabled(std::size_t hart, std::uint32_t src) const {
  check_source(src);
  return enable_.at(hart)[src];
}

void Plic::set_threshold(std::size_t hart, std::uint32_t threshold) {
  threshold_.at(hart) = threshold;
}

void Plic::set_trigger(std::uint32_t src, Trigger trigger) {
  check_source(src);
  trigger_[src] = trigger;
}

Trigger Plic::trigger(std::uint32_t src) const {
  check_source(src);
  return trigger_[src];
}

void Plic::set_input(std::uint32_t src, bool level) {
  check_source(src);
  const bool rising = level && !input_[src];
  input_[src] = level;
  if (trigger_[src] == Trigger::kLevel) {
    // The gateway forwards one request per claim/complete cycle.
    if (level && !claimed_[src]) pending_[src] = true;
    return;
  }
  if (!rising) return;
  if (claimed_[src]) {
    held_edge_[src] = true;
  } else {
    pending_[src] = true;
  }
}

void Plic::pulse(std::uint32_t src) {
  set_input(src, true);
  set_input(src, false);
}

bool Plic::pending(std::uint32_t src) const {
  check_source(src);
  return pending_[src];
}

bool Plic::claimed(std::uint32_t src) const {
  check_source(src);
  return claimed_[src];
}

bool Plic::input(std::uint32_t src) const {
  check_source(src);
  return input_[src];
}

std::uint32_t Plic::best(std::size_t hart) const {
  const auto& en = enable_.at(hart);
  std::uint32_t winner = 0;
  std::uint32_t winner_prio = 0;
  for (std::uint32_t s = 1; s <= sources(); ++s) {
    if (!pending_[s] || !en[s] || claimed_[s]) continue;
    if (priority_[s] <= threshold_[hart]) continue;
    if (winner == 0 || priority_[s] > winner_prio) {
      winner = s;
      winner_prio = priority_[s];
    }
  }
  return winner;
}

bool Plic::meip(std::size_t hart) const { return best(hart) != 0; }

std::uint32_t Plic::claim(std::size_t hart) {
  const std::uint32_t src = best(hart);
  if (src == 0) return 0;
  claimed_[src] = true;
  claimed_by_[src] = hart;
  pending_[src] = false;
  return src;
}

void Plic::complete(std::size_t hart, std::uint32_t src) {
  check_source(src);
  if (!claimed_[src] || claimed_by_[src] != hart) {
    throw ProtocolError("PLIC complete of source " + std::to_string(src) +
                        " that is not claimed by hart " + std::to_string(hart));
  }
  claimed_[src] = false;
  if (trigger_[src] == Trigger::kLevel) {
    if (input_[src]) pending_[src] = true;
  } else if (held_edge_[src]) {
    held_edge_[src] = false;
    pending_[src] = true;
  }
}

std::uint32_t Plic::read(std::uint64_t offset) {
  if (offset < kPendingBase) {
    return priority(static_cast<std::uint32_t>(offset / 4));
  }
  if (offset < kEnableBase) {
    const std::uint32_t word = static_cast<std::uint32_t>((offset - kPendingBase) / 4);
    std::uint32_t bits = 0;
    for (std::uint32_t b = 0; b < 32; ++b) {
      const std::uint32_t s = word * 32 + b;
      if (s >= 1 && s <= sources() && pending_[s]) bits |= 1u << b;
    }
    return bits;
  }
  if (offset < kContextBase) {
    const std::size_t ctx = (offset - kEnableBase) / kEnableStride;
    const std::uint32_t word =
        static_cast<std::uint32_t>(((offset - kEnableBase) % kEnableStride) / 4);
    std::uint32_t bits = 0;
    for (std::uint32_t b = 0; b < 32; ++b) {
      const std::uint32_t s = word * 32 + b;
      if (s >= 1 && s <= sources() && enable_.at(ctx)[s]) bits |= 1u << b;
    }
    return bits;
  }
  const std::size_t ctx = (offset - kContextBase) / kContextStride;
  const std::uint64_t reg = (offset - kContextBase) % kContextStride;
  if (reg == 0) return threshold_.at(ctx);
  if (reg == 4) return claim(ctx);
  throw std::out_of_range("PLIC read at unmapped offset " + std::to_string(offset));
}

void Plic::write(std::uint64_t offset, std::uint32_t value) {
  if (offset < kPendingBase) {
    set_priority(static_cast<std::uint32_t>(offset / 4), value);
    return;
  }
  if (offset < kEnableBase) {
    throw std::out_of_range("PLIC pending bits are read only");
  }
  if (offset < kContextBase) {
    const std::size_t ctx = (offset - kEnableBase) / kEnableStride;
    const std::uint32_t word =
        static_cast<std::uint32_t>(((offset - kEnableBase) % kEnableStride) / 4);
    for (std::uint32_t b = 0; b < 32; ++b) {
      const std::uint32_t s = word * 32 + b;
      if (s >= 1 && s <= sources()) enable_.at(ctx)[s] = ((value >> b) & 1u) != 0;
    }
    return;
  }
  const std::size_t ctx = (offset - kContextBase) / kContextStride;
  const std::uint64_t reg = (offset - kContextBase) % kContextStride;
  if (reg == 0) {
    set_threshold(ctx, value);
    return;
  }
  if (reg == 4) {
    complete(ctx, value);
    return;
  }
  throw std::out_of_range("PLIC write at unmapped offset " + std::to_string(offset));
}

}  // namespace ampsim
