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

// Brute-force reference models shared by unit and acceptance tests. They
// are written independently of the library and must stay that way.

#include <cstdint>
#include <optional>
#include <vector>

namespace ampsim::oracle {

struct PlicSource {
  std::uint32_t priority = 0;
  bool pending = false;
  bool enabled = false;
  bool claimed = false;
};

// Index into `sources` is source id - 1. Returns 0 when nothing qualifies.
inline std::uint32_t plic_claim(const std::vector<PlicSource>& sources,
                                std::uint32_t threshold) {
  std::uint32_t best_id = 0;
  std::uint32_t best_prio = 0;
  for (std::uint32_t i = 0; i < sources.size(); ++i) {
    const auto& s = sources[i];
    if (!s.pending || !s.enabled || s.claimed || s.priority <= threshold) continue;
    if (best_id == 0 || s.priority > best_prio) {
      best_id = i + 1;
      best_prio = s.priority;
    }
  }
  return best_id;
}

struct ClicLine {
  std::uint32_t id = 0;
  std::uint8_t level = 0;
  std::uint8_t priority = 0;
  bool pending = false;
  bool enabled = false;
};

// Sort-free argmax: a line wins if no other eligible line beats it.
inline std::optional<std::uint32_t> clic_arbitrate(const std::vector<ClicLine>& lines,
                                                   std::uint8_t running_level,
                                                   std::uint8_t mintthresh) {
  const std::uint8_t floor = running_level > mintthresh ? running_level : mintthresh;
  for (const auto& a : lines) {
    if (!a.pending || !a.enabled) continue;
    bool beaten = false;
    for (const auto& b : lines) {
      if (&a == &b || !b.pending || !b.enabled) continue;
      const bool better = b.level > a.level ||
                          (b.level == a.level && b.priority > a.priority) ||
                          (b.level == a.level && b.priority == a.priority && b.id < a.id);
      if (better) {
        beaten = true;
        break;
      }
    }
    if (!beaten) {
      if (a.level > floor) return a.id;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace ampsim::oracle
