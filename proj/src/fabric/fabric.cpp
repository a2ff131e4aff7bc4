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

#include "ampsim/fabric/fabric.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace ampsim {

namespace {

std::size_t plic_size(const RoutingConfig& config) {
  std::uint32_t max_id = 31;
  for (const auto& s : config.sources) {
    if (s.plic_source) max_id = std::max(max_id, *s.plic_source);
  }
  return max_id;
}

}  // namespace

Wiring route_legacy_through_clic(const RoutingConfig& config) {
  Wiring w;
  w.mode = config.mode;
  w.msip_line = config.msip_line;
  w.mtip_line = config.mtip_line;
  w.meip_line = config.meip_line;

  if (config.mode == ControllerMode::kClic) {
    const std::set<std::uint32_t> std_lines{w.msip_line, w.mtip_line, w.meip_line};
    if (std_lines.size() != 3) {
      throw RoutingError("mtip, msip and meip must use distinct CLIC lines");
    }
    for (std::uint32_t line : std_lines) {
      if (line >= clic_line::kFirstPlatform || line >= config.clic_lines) {
        throw RoutingError("standard CLIC line " + std::to_string(line) +
                           " must be below 16");
      }
    }
    w.clic_owner[w.msip_line] = kSourceMsip;
    w.clic_owner[w.mtip_line] = kSourceMtip;
    w.clic_owner[w.meip_line] = "meip";
  }

  std::set<std::string> names;
  for (const auto& s : config.sources) {
    if (s.name.empty()) throw RoutingError("interrupt source without a name");
    if (s.name == kSourceMtip || s.name == kSourceMsip) {
      throw RoutingError("source name '" + s.name + "' is reserved for the CLINT");
    }
    if (!names.insert(s.name).second) {
      throw RoutingError("duplicate interrupt source '" + s.name + "'");
    }
    if (s.plic_source) {
      if (*s.plic_source == 0) {
        throw RoutingError("source '" + s.name + "': PLIC source 0 is reserved");
      }
      auto [it, fresh] = w.plic_owner.emplace(*s.plic_source, s.name);
      if (!fresh) {
        throw RoutingError("PLIC source " + std::to_string(*s.plic_source) +
                           " assigned to both '" + it->second + "' and '" + s.name + "'");
      }
    }
    if (config.mode == ControllerMode::kClic && s.clic_line) {
      const std::uint32_t line = *s.clic_line;
      if (line < clic_line::kFirstPlatform || line >= config.clic_lines) {
        throw RoutingError("source '" + s.name + "': CLIC line " + std::to_string(line) +
                           " outside platform range 16.." +
                           std::to_string(config.clic_lines - 1));
      }
      auto [it, fresh] = w.clic_owner.emplace(line, s.name);
      if (!fresh) {
        throw RoutingError("CLIC line " + std::to_string(line) + " assigned to both '" +
                           it->second + "' and '" + s.name + "'");
      }
      w.routes[s.name] = SourceRoute{Route::kClicLine, line};
    } else if (s.plic_source) {
      w.routes[s.name] = SourceRoute{Route::kPlic, *s.plic_source};
    } else {
      throw RoutingError("source '" + s.name + "' has no route in " +
                         to_string(config.mode) + " mode");
    }
  }
  return w;
}

InterruptFabric::InterruptFabric(const RoutingConfig& config)
    : wiring_(route_legacy_through_clic(config)),
      clint_(1),
      plic_(plic_size(config), 1),
      clic_(config.clic_lines) {
  for (const auto& s : config.sources) {
    bindings_[s.name] = s;
    if (s.plic_source) {
      plic_.set_trigger(*s.plic_source, s.trigger);
      plic_.set_priority(*s.plic_source, 1);
      plic_.set_enable(0, *s.plic_source, true);
    }
  }
  if (wiring_.mode == ControllerMode::kClic) {
    for (std::uint32_t line : {wiring_.msip_line, wiring_.mtip_line, wiring_.meip_line}) {
      clic_.configure(line, ClicLineConfig{true, Trigger::kLevel, false, Clic::make_ctl(1, 0)});
    }
    for (const auto& [name, route] : wiring_.routes) {
      if (route.route != Route::kClicLine) continue;
      const auto& b = bindings_.at(name);
      clic_.configure(route.id, ClicLineConfig{true, b.trigger, b.shv,
                                               Clic::make_ctl(1, b.clic_priority)});
    }
  }
  sync();
}

const SourceBinding* InterruptFabric::binding(const std::string& source) const {
  auto it = bindings_.find(source);
  return it == bindings_.end() ? nullptr : &it->second;
}

bool InterruptFabric::has_source(const std::string& source) const {
  return source == kSourceMtip || source == kSourceMsip || bindings_.count(source) != 0;
}

void InterruptFabric::set_source(const std::string& source, bool level) {
  if (source == kSourceMsip) {
    clint_.set_msip(0, level);
  } else if (source == kSourceMtip) {
    throw std::invalid_argument("mtip is driven by the CLINT timer, not a device");
  } else {
    auto it = wiring_.routes.find(source);
    if (it == wiring_.routes.end()) {
      throw std::out_of_range("unknown interrupt source '" + source + "'");
    }
    if (it->second.route == Route::kClicLine) {
      clic_.set_input(it->second.id, level);
    } else {
      plic_.set_input(it->second.id, level);
    }
  }
  sync();
}

void InterruptFabric::pulse_source(const std::string& source) {
  if (source == kSourceMsip) {
    // msip is a register, not a wire; a pulse leaves it set until cleared.
    clint_.set_msip(0, true);
    sync();
    return;
  }
  set_source(source, true);
  set_source(source, false);
}

void InterruptFabric::sync() {
  const bool mtip = clint_.mtip(0);
  const bool msip = clint_.msip(0);
  const bool meip = plic_.meip(0);
  if (wiring_.mode == ControllerMode::kClintPlic) {
    mtip_wire_ = mtip;
    msip_wire_ = msip;
    meip_wire_ = meip;
    return;
  }
  mtip_wire_ = msip_wire_ = meip_wire_ = false;
  clic_.set_input(wiring_.mtip_line, mtip);
  clic_.set_input(wiring_.msip_line, msip);
  clic_.set_input(wiring_.meip_line, meip);
}

}  // namespace ampsim
