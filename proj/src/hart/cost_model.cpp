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

#include "ampsim/hart/cost_model.hpp"

#include <stdexcept>
#include <string>

namespace ampsim {

namespace {

constexpr std::array<std::string_view, kPrimitiveCount> kPrimitiveNames = {
    "trap_entry",   "trap_exit",       "vector_table_fetch", "software_cause_decode",
    "plic_claim",   "plic_complete",   "context_save",       "context_restore",
    "csr_access",   "kernel_op",       "queue_op",           "compute",
    "idle",
};

constexpr std::array<std::string_view, 12> kFieldNames = {
    "trap_entry",           "trap_exit",          "vector_table_fetch",
    "software_cause_decode", "plic_claim_access",  "plic_complete_access",
    "context_save_per_reg", "context_restore_per_reg", "n_caller_saved_regs",
    "csr_access",           "kernel_op_base",     "queue_op",
};

}  // namespace

std::string_view to_string(Primitive p) {
  return kPrimitiveNames.at(static_cast<std::size_t>(p));
}

bool is_primitive_name(std::string_view name) {
  for (auto n : kPrimitiveNames) {
    if (n == name) return true;
  }
  return false;
}

const std::array<std::string_view, 12>& CostModel::field_names() { return kFieldNames; }

Cycles CostModel::get(std::string_view field) const {
  if (field == "trap_entry") return trap_entry;
  if (field == "trap_exit") return trap_exit;
  if (field == "vector_table_fetch") return vector_table_fetch;
  if (field == "software_cause_decode") return software_cause_decode;
  if (field == "plic_claim_access") return plic_claim_access;
  if (field == "plic_complete_access") return plic_complete_access;
  if (field == "context_save_per_reg") return context_save_per_reg;
  if (field == "context_restore_per_reg") return context_restore_per_reg;
  if (field == "n_caller_saved_regs") return n_caller_saved_regs;
  if (field == "csr_access") return csr_access;
  if (field == "kernel_op_base") return kernel_op_base;
  if (field == "queue_op") return queue_op;
  throw std::out_of_range("unknown cost_model field '" + std::string(field) + "'");
}

void CostModel::set(std::string_view field, Cycles value) {
  if (field == "trap_entry") trap_entry = value;
  else if (field == "trap_exit") trap_exit = value;
  else if (field == "vector_table_fetch") vector_table_fetch = value;
  else if (field == "software_cause_decode") software_cause_decode = value;
  else if (field == "plic_claim_access") plic_claim_access = value;
  else if (field == "plic_complete_access") plic_complete_access = value;
  else if (field == "context_save_per_reg") context_save_per_reg = value;
  else if (field == "context_restore_per_reg") context_restore_per_reg = value;
  else if (field == "n_caller_saved_regs") n_caller_saved_regs = value;
  else if (field == "csr_access") csr_access = value;
  else if (field == "kernel_op_base") kernel_op_base = value;
  else if (field == "queue_op") queue_op = value;
  else throw std::out_of_range("unknown cost_model field '" + std::string(field) + "'");
}

}  // namespace ampsim
