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

#include <iosfwd>
#include <string>

#include "ampsim/bench/harness.hpp"
#include "json.hpp"

namespace ampsim::bench {

// metric,config,run,cycles,ns: one row per sample.
void write_csv(std::ostream& out, const SuiteReport& report, std::uint64_t freq_hz = kDefaultFreqHz);

// {metric: {config: {min, avg, max, runs, unit}}}; pingpong adds "lost".
nlohmann::json summary_json(const SuiteReport& report);

// Worst case of every config over the first one, per metric.
nlohmann::json ratios_json(const SuiteReport& report);

// Whitespace-separated worst cases, one row per metric, for bar charts.
std::string gnuplot_table(const SuiteReport& report);

// Fixed-width side-by-side worst cases with ratio columns against the first
// config.
std::string comparison_table(const SuiteReport& report);

}  // namespace ampsim::bench
