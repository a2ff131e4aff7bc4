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

#include "ampsim/fabric/clint.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace ampsim {

Clint::Clint(std::size_t harts)
    : mtimecmp_(harts, std::numeric_limits<Cycles>::max()),
      msip_(harts, false),
      last_mtip_(harts, false) {
  if (harts == 0) throw std::invalid_argument("CLINT needs at least one hart");
}

std::vector<std::size_t> Clint::tick(Cycles now) {
  mtime_ = now;
  std::vector<std::size_t> rising;
  for (std::size_t h = 0; h < harts(); ++h) {
    const bool cur = mtip(h);
    if (cur && !last_mtip_[h]) rising.push_back(h);
    last_mtip_[h] = cur;
  }
  return rising;
}

std::uint64_t Clint::read(std::uint64_t offset) const {
  if (offset == kMtime) return mtime_;
  if (offset >= kMtimecmpBase && offset < kMtimecmpBase + 8 * harts() &&
      (offset - kMtimecmpBase) % 8 == 0) {
    return mtimecmp_[(offset - kMtimecmpBase) / 8];
  }
  if (offset < kMsipBase + 4 * harts() && offset % 4 == 0) {
    return msip_[offset / 4] ? 1 : 0;
  }
  throw std::out_of_range("CLINT read at unmapped offset " + std::to_string(offset));
}

void Clint::write(std::uint64_t offset, std::uint64_t value) {
  if (offset == kMtime) {
    mtime_ = value;
    return;
  }
  if (offset >= kMtimecmpBase && offset < kMtimecmpBase + 8 * harts() &&
      (offset - kMtimecmpBase) % 8 == 0) {
    mtimecmp_[(offset - kMtimecmpBase) / 8] = value;
    return;
  }
  if (offset < kMsipBase + 4 * harts() && offset % 4 == 0) {
    msip_[offset / 4] = (value & 1) != 0;
    return;
  }
  throw std::out_of_range("CLINT write at unmapped offset " + std::to_string(offset));
}

}  // namespace ampsim
