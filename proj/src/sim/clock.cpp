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

#include "ampsim/sim/clock.hpp"

#include <stdexcept>

namespace ampsim {

namespace {
__extension__ typedef unsigned __int128 Wide;
}  // namespace

SimClock::SimClock(std::uint64_t freq_hz) : freq_hz_(freq_hz) {
  if (freq_hz_ == 0) throw std::invalid_argument("clock frequency must be > 0");
}

void SimClock::advance_to(Cycles to) {
  if (to < now_) throw std::logic_error("clock cannot move backward");
  now_ = to;
}

std::uint64_t SimClock::to_ns(Cycles cycles) const {
  const Wide wide = static_cast<Wide>(cycles) * 1'000'000'000u;
  return static_cast<std::uint64_t>(wide / freq_hz_);
}

Cycles SimClock::from_ns(std::uint64_t ns) const {
  const Wide wide = static_cast<Wide>(ns) * freq_hz_;
  return static_cast<Cycles>(wide / 1'000'000'000u);
}

}  // namespace ampsim
