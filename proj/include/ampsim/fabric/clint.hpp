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

#include "ampsim/sim/clock.hpp"

namespace ampsim {

// Core Local Interruptor: per-hart machine timer and software interrupts.
//
// Register map (offsets from the CLINT base):
//   0x0000 + 4*h   msip[h]      bit 0 only
//   0x4000 + 8*h   mtimecmp[h]  64 bit
//   0xBFF8         mtime        64 bit
class Clint {
 public:
  static constexpr std::uint64_t kMsipBase = 0x0000;
  static constexpr std::uint64_t kMtimecmpBase = 0x4000;
  static constexpr std::uint64_t kMtime = 0xBFF8;

  explicit Clint(std::size_t harts = 1);

  std::size_t harts() const { return mtimecmp_.size(); }

  Cycles mtime() const { return mtime_; }
  void set_mtime(Cycles value) { mtime_ = value; }

  Cycles mtimecmp(std::size_t hart) const { return mtimecmp_.at(hart); }
  void set_mtimecmp(std::size_t hart, Cycles value) { mtimecmp_.at(hart) = value; }

  bool msip(std::size_t hart) const { return msip_.at(hart); }
  void set_msip(std::size_t hart, bool value) { msip_.at(hart) = value; }

  bool mtip(std::size_t hart) const { return mtime_ >= mtimecmp_.at(hart); }

  // Sets mtime and returns the harts whose mtip went false -> true since
  // the previous tick.
  std::vector<std::size_t> tick(Cycles now);

  std::uint64_t read(std::uint64_t offset) const;
  void write(std::uint64_t offset, std::uint64_t value);

 private:
  Cycles mtime_ = 0;
  std::vector<Cycles> mtimecmp_;
  std::vector<bool> msip_;
  std::vector<bool> last_mtip_;
};

}  // namespace ampsim
