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
#include <map>
#include <random>
#include <string>

#include "ampsim/sim/clock.hpp"

namespace ampsim {

struct JitterBounds {
  Cycles lo = 0;
  Cycles hi = 0;
};

// splitmix64 finalizer; used to derive independent per-run seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);
std::uint64_t mix_seed(std::uint64_t seed, const std::string& stream);

// Seeded source of uniform integer jitter on named channels. The mapping
// from raw draws to [lo, hi] is defined here, not by the standard library,
// so sequences are identical across toolchains.
class JitterSource {
 public:
  explicit JitterSource(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }

  // Throws std::invalid_argument if lo > hi.
  void configure(const std::string& channel, JitterBounds bounds);
  bool has_channel(const std::string& channel) const;
  JitterBounds bounds(const std::string& channel) const;

  // Throws std::out_of_range for an unknown channel.
  Cycles draw(const std::string& channel);

  std::uint64_t draw_uniform(std::uint64_t lo, std::uint64_t hi);

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::map<std::string, JitterBounds> channels_;
};

}  // namespace ampsim
