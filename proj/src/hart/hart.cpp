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

#include "ampsim/hart/hart.hpp"

#include <algorithm>
#include <string>

namespace ampsim {

Hart::Hart(ControllerMode mode, CostModel costs) : mode_(mode), costs_(costs) {
  csr_.mtvec_mode = mode == ControllerMode::kClic ? TvecMode::kClic : TvecMode::kDirect;
}

void Hart::charge(Primitive prim, Cycles cycles) {
  const auto i = static_cast<std::size_t>(prim);
  csr_.mcycle += cycles;
  charged_[i] += cycles;
  ++counts_[i];
}

void Hart::set_wires(bool mtip, bool msip, bool meip) {
  csr_.mtip = mtip;
  csr_.msip = msip;
  csr_.meip = meip;
}

std::optional<TrapCause> Hart::pending_cause() const {
  if (mode_ != ControllerMode::kClintPlic || !csr_.mie) return std::nullopt;
  if (csr_.meip && csr_.meie) return TrapCause{cause::kMachineExternal, 0, false, true};
  if (csr_.msip && csr_.msie) return TrapCause{cause::kMachineSoftware, 0, false, false};
  if (csr_.mtip && csr_.mtie) return TrapCause{cause::kMachineTimer, 0, false, false};
  return std::nullopt;
}

void Hart::accept(const ClicWinner& winner, bool via_plic) {
  if (mode_ != ControllerMode::kClic) throw HartError("handshake accept in CLINT_PLIC mode");
  accepted_ = TrapCause{winner.id, winner.level, winner.shv, via_plic};
}

DispatchPlan Hart::take_trap(const TrapCause& c) {
  if (mode_ == ControllerMode::kClintPlic) {
    const auto p = pending_cause();
    if (!p || p->id != c.id) {
      throw HartError("spurious trap: cause " + std::to_string(c.id) + " is not pending");
    }
  } else {
    if (!accepted_ || accepted_->id != c.id) {
      throw HartError("spurious trap: line " + std::to_string(c.id) + " was not acknowledged");
    }
    accepted_.reset();
  }

  TrapFrame frame;
  frame.privilege = privilege_;
  frame.prev_level = running_level();
  frame.level = mode_ == ControllerMode::kClic ? c.level : 0;
  frame.saved_mie = csr_.mie;
  frame.cause = c;
  frames_.push_back(frame);
  csr_.mie = false;
  csr_.mcause = c.id;
  csr_.mcause_interrupt = true;
  privilege_ = Privilege::kMachine;

  DispatchPlan plan;
  plan.charges.push_back({Primitive::kTrapEntry, costs_.trap_entry});
  if (mode_ == ControllerMode::kClic && c.shv) {
    plan.vectored = true;
    plan.charges.push_back({Primitive::kVectorFetch, costs_.vector_table_fetch});
    plan.handler_address = csr_.mtvt_base + 8ull * c.id;
  } else {
    plan.charges.push_back({Primitive::kCauseDecode, costs_.software_cause_decode});
    plan.handler_address = csr_.mtvec_base;
  }
  if (c.via_plic) plan.charges.push_back({Primitive::kPlicClaim, costs_.plic_claim_access});
  for (const auto& ch : plan.charges) {
    charge(ch.prim, ch.cycles);
    plan.total += ch.cycles;
  }
  return plan;
}

Cycles Hart::trap_return() {
  if (frames_.empty()) throw HartError("trap return with an empty nesting stack");
  const TrapFrame frame = frames_.back();
  frames_.pop_back();
  csr_.mie = frame.saved_mie;
  privilege_ = frame.privilege;
  charge(Primitive::kTrapExit, costs_.trap_exit);
  return costs_.trap_exit;
}

std::optional<MnxtiResult> Hart::read_mnxti(Clic& clic) {
  if (mode_ != ControllerMode::kClic) throw HartError("mnxti is a CLIC-mode CSR");
  if (frames_.empty()) throw HartError("mnxti read outside an interrupt handler");
  charge(Primitive::kCsrAccess, costs_.csr_access);
  TrapFrame& frame = frames_.back();
  const auto w = clic.top();
  if (!w || w->shv) return std::nullopt;
  if (w->level <= std::max(csr_.mintthresh, frame.prev_level)) return std::nullopt;
  clic.take(w->id);
  frame.level = w->level;
  frame.cause = TrapCause{w->id, w->level, false, false};
  csr_.mcause = w->id;
  return MnxtiResult{w->id, w->level, csr_.mtvec_base};
}

Cycles Hart::context_save() {
  const Cycles c = costs_.context_save();
  charge(Primitive::kContextSave, c);
  return c;
}

Cycles Hart::context_restore() {
  const Cycles c = costs_.context_restore();
  charge(Primitive::kContextRestore, c);
  return c;
}

}  // namespace ampsim
