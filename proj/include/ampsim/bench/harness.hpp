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
#include <string>
#include <vector>

#include "ampsim/bench/metric.hpp"
#include "ampsim/rtos/config.hpp"
#include "ampsim/sim/engine.hpp"
#include "ampsim/xrce/pingpong.hpp"

namespace ampsim::bench {

// Scenario misconfiguration: a start or stop probe is missing.
class ProbeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BenchConfig {
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  // Interrupt arrival phase, uniform in [lo, hi] cycles.
  JitterBounds phase{0, kVictimPeriod - 1};
  std::uint64_t freq_hz = kDefaultFreqHz;
  xrce::PingPongConfig pingpong;

  bool operator==(const BenchConfig& o) const {
    return runs == o.runs && seed == o.seed && phase.lo == o.phase.lo &&
           phase.hi == o.phase.hi && freq_hz == o.freq_hz && pingpong == o.pingpong;
  }
};

// Samples are cycles for kernel metrics and nanoseconds for pingpong.
struct MetricReport {
  MetricId metric = MetricId::kAct;
  std::string config;
  std::vector<std::uint64_t> samples;
  std::size_t lost = 0;  // pingpong rounds that timed out

  std::uint64_t min() const;
  std::uint64_t max() const;  // worst case
  double avg() const;
  const char* unit() const { return metric == MetricId::kPingPong ? "ns" : "cycles"; }
};

// Per-run seed; independent of the platform so configs see the same phases.
std::uint64_t run_seed(std::uint64_t seed, MetricId metric, std::size_t run);

// One run on `engine`, which must be fresh. Returns stop - start cycles.
std::uint64_t run_once(Engine& engine, const MetricScenario& scenario,
                       const PlatformConfig& platform, Cycles phase);
// Same, on its own engine seeded from run_seed().
std::uint64_t run_once(MetricId metric, const PlatformConfig& platform, const BenchConfig& cfg,
                       std::size_t run);

// Phase drawn for `run` from the bench jitter channel.
Cycles draw_phase(const BenchConfig& cfg, MetricId metric, std::size_t run);

MetricReport run_metric(MetricId metric, const PlatformConfig& platform, const BenchConfig& cfg);

struct SuiteReport {
  std::vector<MetricId> metrics;
  std::vector<std::string> configs;
  // entries[m * configs.size() + c]
  std::vector<MetricReport> entries;

  const MetricReport& at(std::size_t metric, std::size_t config) const {
    return entries.at(metric * configs.size() + config);
  }
};

// Reference implementation: one engine after another.
SuiteReport run_suite_serial(const std::vector<PlatformConfig>& platforms,
                             const std::vector<MetricId>& metrics, const BenchConfig& cfg);
// Every (metric, config, run) on its own engine, spread over `jobs` OpenMP
// threads (0: runtime default). Output is identical to the serial version.
SuiteReport run_suite(const std::vector<PlatformConfig>& platforms,
                      const std::vector<MetricId>& metrics, const BenchConfig& cfg,
                      int jobs = 0);

}  // namespace ampsim::bench
