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
#include <stdexcept>
#include <string>

namespace ampsim {

// Raised when a controller register protocol is violated (completing an
// unclaimed PLIC source, acknowledging a CLIC handshake that was never
// requested, ...).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Trigger : std::uint8_t { kLevel, kEdge };

enum class ControllerMode : std::uint8_t { kClintPlic, kClic };

const char* to_string(ControllerMode mode);
const char* to_string(Trigger trigger);
ControllerMode parse_controller_mode(const std::string& text);
Trigger parse_trigger(const std::string& text);

}  // namespace ampsim
