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
#include <optional>
#include <string>
#include <vector>

#include "ampsim/fabric/clic.hpp"
#include "ampsim/fabric/clint.hpp"
#include "ampsim/fabric/common.hpp"
#include "ampsim/fabric/plic.hpp"

namespace ampsim {

// Reserved source names driven by the CLINT rather than a device.
inline constexpr const char* kSourceMtip = "mtip";
inline constexpr const char* kSourceMsip = "msip";

// A device interrupt known by symbolic name. In CLINT_PLIC mode it reaches
// the hart through `plic_source`. In CLIC mode it drives `clic_line`
// directly when set, otherwise it goes through the PLIC and the meip line.
struct SourceBinding {
  std::string name;
  std::optional<std::uint32_t> plic_source;
  std::optional<std::uint32_t> clic_line;
  Trigger trigger = Trigger::kEdge;
  bool shv = false;
  std::uint8_t clic_priority = 0;
};

struct RoutingConfig {
  ControllerMode mode = ControllerMode::kClintPlic;
  std::uint32_t msip_line = clic_line::kMsip;
  std::uint32_t mtip_line = clic_line::kMtip;
  std::uint32_t meip_line = clic_line::kMeip;
  std::size_t clic_lines = kClicDefaultLines;
  std::vector<SourceBinding> sources;
};

enum class Route : std::uint8_t { kHartWire, kPlic, kClicLine };

struct SourceRoute {
  Route route = Route::kPlic;
  std::uint32_t id = 0;  // PLIC source or CLIC line
};

// Resolved connections. In CLINT_PLIC mode (legacy) mtip/msip/meip drive
// the hart's level-sensitive inputs. In CLIC mode they drive fixed CLIC
// lines.
struct Wiring {
  ControllerMode mode = ControllerMode::kClintPlic;
  std::uint32_t msip_line = clic_line::kMsip;
  std::uint32_t mtip_line = clic_line::kMtip;
  std::uint32_t meip_line = clic_line::kMeip;
  std::map<std::string, SourceRoute> routes;
  std::map<std::uint32_t, std::string> clic_owner;
  std::map<std::uint32_t, std::string> plic_owner;
};

class RoutingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws RoutingError on a conflicting or out-of-range line assignment.
Wiring route_legacy_through_clic(const RoutingConfig& config);

// Owns the three controllers and keeps their outputs connected according
// to a Wiring. Call sync() after touching controller state directly.
class InterruptFabric {
 public:
  explicit InterruptFabric(const RoutingConfig& config);

  ControllerMode mode() const { return wiring_.mode; }
  const Wiring& wiring() const { return wiring_; }
  const SourceBinding* binding(const std::string& source) const;
  bool has_source(const std::string& source) const;

  Clint& clint() { return clint_; }
  const Clint& clint() const { return clint_; }
  Plic& plic() { return plic_; }
  const Plic& plic() const { return plic_; }
  Clic& clic() { return clic_; }
  const Clic& clic() const { return clic_; }

  // Device wire by symbolic name. Throws std::out_of_range when unknown.
  void set_source(const std::string& source, bool level);
  void pulse_source(const std::string& source);

  // Propagates CLINT and PLIC outputs to hart wires or CLIC lines.
  void sync();

  // Legacy hart inputs; always false in CLIC mode.
  bool mtip_wire() const { return mtip_wire_; }
  bool msip_wire() const { return msip_wire_; }
  bool meip_wire() const { return meip_wire_; }

  // The CLIC line a trap cause id came in on carries the PLIC output.
  bool is_meip_line(std::uint32_t line) const {
    return wiring_.mode == ControllerMode::kClic && line == wiring_.meip_line;
  }

 private:
  Wiring wiring_;
  std::map<std::string, SourceBinding> bindings_;
  Clint clint_;
  Plic plic_;
  Clic clic_;
  bool mtip_wire_ = false;
  bool msip_wire_ = false;
  bool meip_wire_ = false;
};

}  // namespace ampsim
