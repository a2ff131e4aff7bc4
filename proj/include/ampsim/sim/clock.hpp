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

namespace ampsim {

using Cycles = std::uint64_t;

inline constexpr std::uint64_t kDefaultFreqHz = 50'000'000;

// Cycle counter of the simulated MCU. Conversions are exact integer
// arithmetic, rounding down.
class SimClock {
 public:
  explicit SimClock(std::uint64_t freq_hz = kDefaultFreqHz);

  Cycles now() const { return now_; }
  std::uint64_t freq_hz() const { return freq_hz_; }

  // Throws std::logic_error if `to` is in the past.
  void advance_to(Cycles to);

  std::uint64_t to_ns(Cycles cycles) const;
  Cycles from_ns(std::uint64_t ns) const;
  Cycles from_us(std::uint64_t us) const { return from_ns(us * 1000); }

 private:
  Cycles now_ = 0;
  std::uint64_t freq_hz_;
};

}  // namespace ampsim
