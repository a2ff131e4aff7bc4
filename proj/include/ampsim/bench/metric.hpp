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
#include <optional>
#include <string>
#include <vector>

#include "ampsim/fabric/fabric.hpp"
#include "ampsim/rtos/config.hpp"
#include "ampsim/rtos/machine.hpp"
#include "json.hpp"

namespace ampsim::bench {

enum class MetricId : std::uint8_t {
  kAct,
  kActl,
  kIntDisable,
  kIntEnable,
  kIsrEntry,
  kIsr2Entry,
  kIsrExit,
  kIstEntry,
  kIstExit,
  kTerml,
  kPingPong,
};

const char* to_string(MetricId id);
// Throws std::invalid_argument listing the valid names.
MetricId parse_metric(const std::string& name);
std::string metric_names();
// The ten kernel metrics, without pingpong.
const std::vector<MetricId>& rtos_metrics();
bool is_rtos_metric(MetricId id);

// A trace record selector: event kind plus data.name (any when empty).
struct Probe {
  std::string event;
  std::string name;
};

// Main loop of the interrupted task: 40 compute, a 24-cycle masked window
// and the two interrupt services, 108 cycles per iteration.
inline constexpr Cycles kVictimPeriod = 108;
// Earliest interrupt arrival; the phase draw is added on top.
inline constexpr Cycles kArrivalBase = 1'000;
inline constexpr const char* kBenchSource = "bench_dev";

struct MetricScenario {
  MetricId metric = MetricId::kAct;
  KernelConfig kernel;
  RoutingConfig routing;
  // Device pulsed at kArrivalBase + phase; unset for service metrics.
  std::optional<std::string> fire;
  Probe start;
  Probe stop;
  Cycles horizon = 0;
};

// Two tasks and at most one ISR per metric. The bench source sits on PLIC
// source 1 and CLIC line 16 (vectored). Throws for kPingPong.
MetricScenario canonical_scenario(MetricId metric);

// Scheduler state, ISR depth and error counts; excludes timing.
nlohmann::json kernel_state(const Machine& m);

}  // namespace ampsim::bench
