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

#include "ampsim/bench/harness.hpp"
#include "ampsim/fabric/fabric.hpp"
#include "ampsim/rtos/config.hpp"
#include "json.hpp"

namespace ampsim::cli {

// Unreadable, malformed or invalid scenario file. The message names the
// offending key and, when known, its line.
class ScenarioError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

struct Stimulus {
  std::string source;
  Cycles at = 0;
};

// Free-running kernel section: scripts, line map and device stimuli.
struct KernelScenario {
  KernelConfig kernel;
  RoutingConfig routing;
  std::vector<Stimulus> stimuli;
  Cycles horizon = 100'000;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<PlatformConfig> platforms;
  std::vector<bench::MetricId> metrics;
  bench::BenchConfig bench;
  std::optional<KernelScenario> kernel;
};

// Parsed document plus the source line of every key path ("bench.runs").
struct Document {
  nlohmann::json root;
  std::map<std::string, int> lines;
};

// YAML (a superset of the JSON syntax accepted here) to a JSON tree.
// Scalars become unsigned integers, booleans, floats or strings.
Document parse_document(const std::string& text);

// "bench.runs=100", "platforms.1.mode=clic". The value is parsed as a YAML
// scalar. Throws ScenarioError on a malformed override or bad path.
void apply_override(Document& doc, const std::string& assignment);

// Validates every section; unknown keys and unresolved names are errors.
Scenario build_scenario(const Document& doc, const std::string& default_name = "scenario");

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides = {},
                       std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace ampsim::cli
