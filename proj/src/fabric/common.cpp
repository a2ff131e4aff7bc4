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

#include "ampsim/fabric/common.hpp"

#include <stdexcept>

namespace ampsim {

const char* to_string(ControllerMode mode) {
  return mode == ControllerMode::kClic ? "clic" : "clint_plic";
}

const char* to_string(Trigger trigger) {
  return trigger == Trigger::kEdge ? "edge" : "level";
}

ControllerMode parse_controller_mode(const std::string& text) {
  if (text == "clint_plic" || text == "clint") return ControllerMode::kClintPlic;
  if (text == "clic") return ControllerMode::kClic;
  throw std::invalid_argument("unknown controller mode '" + text +
                              "' (expected clint_plic or clic)");
}

Trigger parse_trigger(const std::string& text) {
  if (text == "edge") return Trigger::kEdge;
  if (text == "level") return Trigger::kLevel;
  throw std::invalid_argument("unknown trigger '" + text + "' (expected edge or level)");
}

}  // namespace ampsim
