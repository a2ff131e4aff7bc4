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
#include <vector>

#include "ampsim/fabric/common.hpp"

namespace ampsim {

// Platform-Level Interrupt Controller with one context per hart.
//
// Source 0 is reserved ("no interrupt"). A source qualifies for a hart when
// it is pending, enabled for that hart, not claimed, and its priority is
// strictly greater than the hart threshold. Ties go to the lowest id.
//
// Register map (offsets from the PLIC base, context c == hart):
//   0x000000 + 4*s             priority[s]
//   0x001000 + 4*(s/32)        pending bits (read only)
//   0x002000 + 0x80*c + 4*(s/32)  enable bits
//   0x200000 + 0x1000*c        threshold
//   0x200004 + 0x1000*c        claim (read) / complete (write)
class Plic {
 public:
  static constexpr std::uint64_t kPriorityBase = 0x000000;
  static constexpr std::uint64_t kPendingBase = 0x001000;
  static constexpr std::uint64_t kEnableBase = 0x002000;
  static constexpr std::uint64_t kEnableStride = 0x80;
  static constexpr std::uint64_t kContextBase = 0x200000;
  static constexpr std::uint64_t kContextStride = 0x1000;

  // `sources` counts usable ids 1..sources.
  explicit Plic(std::size_t sources, std::size_t harts = 1);

  std::size_t sources() const { return priority_.size() - 1; }
  std::size_t harts() const { return threshold_.size(); }

  void set_priority(std::uint32_t src, std::uint32_t priority);
  std::uint32_t priority(std::uint32_t src) const;
  void set_enable(std::size_t hart, std::uint32_t src, bool enabled);
  bool enabled(std::size_t hart, std::uint32_t src) const;
  void set_threshold(std::size_t hart, std::uint32_t threshold);
  std::uint32_t threshold(std::size_t hart) const { return threshold_.at(hart); }
  void set_trigger(std::uint32_t src, Trigger trigger);
  Trigger trigger(std::uint32_t src) const;

  // Gateway input from the device wire.
  void set_input(std::uint32_t src, bool level);
  // Rising then falling edge on the wire.
  void pulse(std::uint32_t src);

  bool pending(std::uint32_t src) const;
  bool claimed(std::uint32_t src) const;
  bool input(std::uint32_t src) const;

  bool meip(std::size_t hart) const;

  // Returns the winning source and marks it claimed, or 0.
  std::uint32_t claim(std::size_t hart);
  // Throws ProtocolError if `src` is not claimed by `hart`.
  void complete(std::size_t hart, std::uint32_t src);

  std::uint32_t read(std::uint64_t offset);
  void write(std::uint64_t offset, std::uint32_t value);

 private:
  void check_source(std::uint32_t src) const;
  std::uint32_t best(std::size_t hart) const;

  std::vector<std::uint32_t> priority_;
  std::vector<bool> pending_;
  std::vector<bool> claimed_;
  std::vector<std::size_t> claimed_by_;
  std::vector<bool> input_;
  std::vector<bool> held_edge_;
  std::vector<Trigger> trigger_;
  std::vector<std::vector<bool>> enable_;
  std::vector<std::uint32_t> threshold_;
};

}  // namespace ampsim
