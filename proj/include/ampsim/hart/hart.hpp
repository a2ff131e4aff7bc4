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

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ampsim/fabric/clic.hpp"
#include "ampsim/fabric/common.hpp"
#include "ampsim/hart/cost_model.hpp"

namespace ampsim {

// Inconsistent use of the hart model (spurious trap, return without a
// frame, mnxti outside CLIC mode).
class HartError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Privilege : std::uint8_t { kUser = 0, kSupervisor = 1, kMachine = 3 };

// Standard interrupt cause codes.
namespace cause {
inline constexpr std::uint32_t kMachineSoftware = 3;
inline constexpr std::uint32_t kMachineTimer = 7;
inline constexpr std::uint32_t kMachineExternal = 11;
}  // namespace cause

struct TrapCause {
  std::uint32_t id = 0;
  std::uint8_t level = 0;
  bool shv = false;
  // Requires a PLIC claim (legacy external cause, or the CLIC meip line).
  bool via_plic = false;
};

struct Charge {
  Primitive prim;
  Cycles cycles;
};

struct DispatchPlan {
  std::vector<Charge> charges;
  Cycles total = 0;
  bool vectored = false;
  std::uint64_t handler_address = 0;
};

struct TrapFrame {
  Privilege privilege = Privilege::kMachine;
  std::uint8_t level = 0;       // level of this handler
  std::uint8_t prev_level = 0;  // level of the interrupted context
  bool saved_mie = false;
  TrapCause cause;
};

enum class TvecMode : std::uint8_t { kDirect, kClic };

struct CsrFile {
  std::uint64_t mcycle = 0;
  bool mie = true;  // mstatus.MIE
  std::uint64_t mtvec_base = 0x8000'0000;
  TvecMode mtvec_mode = TvecMode::kDirect;
  std::uint64_t mtvt_base = 0x8000'1000;
  std::uint32_t mcause = 0;
  bool mcause_interrupt = false;
  std::uint8_t mintthresh = 0;
  // mie / mip bit views for the legacy interface.
  bool msie = true;
  bool mtie = true;
  bool meie = true;
  bool msip = false;
  bool mtip = false;
  bool meip = false;
};

struct MnxtiResult {
  std::uint32_t id = 0;
  std::uint8_t level = 0;
  std::uint64_t handler_address = 0;
};

// Single hart execution context. Instruction execution is not modeled;
// every action charges a cost from the CostModel into mcycle.
class Hart {
 public:
  Hart(ControllerMode mode, CostModel costs);

  ControllerMode mode() const { return mode_; }
  const CostModel& costs() const { return costs_; }
  const CsrFile& csr() const { return csr_; }
  Privilege privilege() const { return privilege_; }

  bool mie() const { return csr_.mie; }
  void set_mie(bool value) { csr_.mie = value; }
  std::uint8_t mintthresh() const { return csr_.mintthresh; }
  void set_mintthresh(std::uint8_t value) { csr_.mintthresh = value; }
  std::uint8_t running_level() const {
    return frames_.empty() ? 0 : frames_.back().level;
  }
  std::size_t depth() const { return frames_.size(); }
  const std::vector<TrapFrame>& frames() const { return frames_; }

  // Legacy level-sensitive inputs (mip view).
  void set_wires(bool mtip, bool msip, bool meip);
  // Highest priority enabled legacy cause (MEI > MSI > MTI) when MIE is set.
  std::optional<TrapCause> pending_cause() const;

  // CLIC mode: records the acknowledged handshake that take_trap consumes.
  void accept(const ClicWinner& winner, bool via_plic);

  // Enters a trap for an accepted interrupt: pushes a frame, clears MIE,
  // charges trap entry and the dispatch path. Throws HartError when the
  // cause was not accepted (spurious trap).
  DispatchPlan take_trap(const TrapCause& cause);
  // mret: pops a frame, restores MIE and level, charges trap_exit.
  Cycles trap_return();

  // CLIC mnxti read. Charges csr_access. Throws HartError in CLINT_PLIC
  // mode or outside a handler.
  std::optional<MnxtiResult> read_mnxti(Clic& clic);

  Cycles context_save();
  Cycles context_restore();

  void charge(Primitive prim, Cycles cycles);
  Cycles charged(Primitive prim) const { return charged_[static_cast<std::size_t>(prim)]; }
  std::uint64_t charge_count(Primitive prim) const {
    return counts_[static_cast<std::size_t>(prim)];
  }
  std::uint64_t saves() const { return charge_count(Primitive::kContextSave); }
  std::uint64_t restores() const { return charge_count(Primitive::kContextRestore); }

 private:
  ControllerMode mode_;
  CostModel costs_;
  CsrFile csr_;
  Privilege privilege_ = Privilege::kMachine;
  std::vector<TrapFrame> frames_;
  std::optional<TrapCause> accepted_;
  std::array<Cycles, kPrimitiveCount> charged_{};
  std::array<std::uint64_t, kPrimitiveCount> counts_{};
};

}  // namespace ampsim
