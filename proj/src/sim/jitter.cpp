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

#include "ampsim/sim/jitter.hpp"

#include <limits>
#include <stdexcept>

namespace ampsim {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& stream) {
  // FNV-1a over the stream name, then mixed with the seed.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return mix_seed(seed, h);
}

JitterSource::JitterSource(std::uint64_t seed) : seed_(seed), rng_(seed) {}

void JitterSource::configure(const std::string& channel, JitterBounds bounds) {
  if (bounds.lo > bounds.hi) {
    throw std::invalid_argument("jitter channel '" + channel + "': lo > hi");
  }
  channels_[channel] = bounds;
}

bool JitterSource::has_channel(const std::string& channel) const {
  return channels_.count(channel) != 0;
}

JitterBounds JitterSource::bounds(const std::string& channel) const {
  auto it = channels_.find(channel);
  if (it == channels_.end()) {
    throw std::out_of_range("unknown jitter channel '" + channel + "'");
  }
  return it->second;
}

Cycles JitterSource::draw(const std::string& channel) {
  const JitterBounds b = bounds(channel);
  return draw_uniform(b.lo, b.hi);
}

std::uint64_t JitterSource::draw_uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw std::invalid_argument("draw_uniform: lo > hi");
  if (lo == hi) return lo;
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return rng_();
  const std::uint64_t range = span + 1;
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return lo + x % range;
}

}  // namespace ampsim
