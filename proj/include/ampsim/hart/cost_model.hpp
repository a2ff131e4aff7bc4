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
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "ampsim/sim/clock.hpp"

namespace ampsim {

// Every modeled action the hart can be charged for.
enum class Primitive : std::uint8_t {
  kTrapEntry,
  kTrapExit,
  kVectorFetch,
  kCauseDecode,
  kPlicClaim,
  kPlicComplete,
  kContextSave,
  kContextRestore,
  kCsrAccess,
  kKernelOp,
  kQueueOp,
  kCompute,
  kIdle,
  kCount,
};

inline constexpr std::size_t kPrimitiveCount = static_cast<std::size_t>(Primitive::kCount);

std::string_view to_string(Primitive p);
// Trace event names are the primitive names; false for anything else.
bool is_primitive_name(std::string_view name);

// Cycle cost per primitive. Defaults are calibration values for an
// in-order single-issue core; acceptance checks never rely on them.
struct CostModel {
  Cycles trap_entry = 12;
  Cycles trap_exit = 10;
  Cycles vector_table_fetch = 4;
  Cycles software_cause_decode = 14;
  Cycles plic_claim_access = 8;
  Cycles plic_complete_access = 8;
  Cycles context_save_per_reg = 2;
  Cycles context_restore_per_reg = 2;
  Cycles n_caller_saved_regs = 16;
  Cycles csr_access = 2;
  Cycles kernel_op_base = 20;
  Cycles queue_op = 4;

  Cycles context_save() const { return context_save_per_reg * n_caller_saved_regs; }
  Cycles context_restore() const { return context_restore_per_reg * n_caller_saved_regs; }

  // Field access by scenario-file key. set() throws std::out_of_range for
  // an unknown key.
  static const std::array<std::string_view, 12>& field_names();
  Cycles get(std::string_view field) const;
  void set(std::string_view field, Cycles value);

  bool operator==(const CostModel&) const = default;
};

}  // namespace ampsim
