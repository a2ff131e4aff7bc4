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
#include <optional>
#include <vector>

#include "ampsim/fabric/common.hpp"

namespace ampsim {

// Standard causes keep their mcause numbers as CLIC line ids; platform
// lines begin at 16.
namespace clic_line {
inline constexpr std::uint32_t kMsip = 3;
inline constexpr std::uint32_t kMtip = 7;
inline constexpr std::uint32_t kMeip = 11;
inline constexpr std::uint32_t kFirstPlatform = 16;
}  // namespace clic_line

inline constexpr std::size_t kClicMaxLines = 4096;
inline constexpr std::size_t kClicDefaultLines = 256;
// Any threshold at or above this masks every line.
inline constexpr std::uint8_t kClicMaskAll = 0xFF;

struct ClicLineConfig {
  bool enabled = false;
  Trigger trigger = Trigger::kLevel;
  bool shv = false;
  std::uint8_t ctl = 0;
};

struct ClicWinner {
  std::uint32_t id = 0;
  std::uint8_t level = 0;
  std::uint8_t priority = 0;
  bool shv = false;

  bool operator==(const ClicWinner&) const = default;
};

struct IrqHandshake {
  bool req = false;
  std::uint32_t id = 0;
  bool ack = false;
  std::uint8_t level = 0;
  bool shv = false;
};

// Core Local Interrupt Controller (single hart).
//
// ctl byte: bits [7:4] level, bits [3:0] priority. Arbitration picks the
// pending and enabled line with the highest level, then highest priority,
// then lowest id. It only yields a request when that level is strictly
// above max(mintthresh, running level).
//
// Register map: 0x1000 + 4*i holds line i as bytes
//   [0] clicintip  [1] clicintie  [2] clicintattr (bit0 shv, bit1 edge)
//   [3] clicintctl
class Clic {
 public:
  static constexpr std::uint64_t kLineBase = 0x1000;

  explicit Clic(std::size_t lines = kClicDefaultLines);

  std::size_t lines() const { return lines_.size(); }

  void configure(std::uint32_t line, const ClicLineConfig& config);
  const ClicLineConfig& config(std::uint32_t line) const;
  void set_enable(std::uint32_t line, bool enabled);
  void set_ctl(std::uint32_t line, std::uint8_t ctl);
  static std::uint8_t make_ctl(std::uint8_t level, std::uint8_t priority);
  std::uint8_t level(std::uint32_t line) const;
  std::uint8_t priority(std::uint32_t line) const;

  // Wire input. Level lines mirror it; edge lines latch rising edges.
  void set_input(std::uint32_t line, bool value);
  void pulse(std::uint32_t line);
  // Software write to the pending bit.
  void set_pending(std::uint32_t line, bool value);
  bool pending(std::uint32_t line) const;

  // Highest ranked pending and enabled line, ignoring thresholds.
  std::optional<ClicWinner> top() const;
  std::optional<ClicWinner> arbitrate(std::uint8_t running_level,
                                      std::uint8_t mintthresh) const;

  // Re-evaluates the request towards the hart. Before ack, a better line
  // replaces the carried id. Returns true if req or id changed.
  bool refresh_handshake(std::uint8_t running_level, std::uint8_t mintthresh);
  const IrqHandshake& handshake() const { return handshake_; }
  // Hart acknowledges the carried id. Edge lines clear their pending bit.
  // Throws ProtocolError without an outstanding request.
  ClicWinner ack();

  // Clears the pending bit of an edge line taken by mnxti.
  void take(std::uint32_t line);

  std::uint32_t read(std::uint64_t offset) const;
  void write(std::uint64_t offset, std::uint32_t value);

 private:
  struct Line {
    ClicLineConfig config;
    bool ip = false;
    bool input = false;
  };

  void check_line(std::uint32_t line) const;
  ClicWinner winner_of(std::uint32_t line) const;

  std::vector<Line> lines_;
  IrqHandshake handshake_;
};

}  // namespace ampsim
