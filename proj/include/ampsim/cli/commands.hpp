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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ampsim/bench/harness.hpp"
#include "ampsim/cli/scenario.hpp"

namespace ampsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitTimeout = 4;

struct Options {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  int jobs = 1;
  std::string metric;                 // trace only
  std::optional<std::string> config;  // trace only; default: first platform
};

// Result of a free-running kernel section on every platform.
nlohmann::json run_kernel_scenario(const Scenario& s);

// Runs a kernel section on one platform into `engine`; `inspect` sees the
// machine after the horizon.
void run_kernel_scenario(Engine& engine, const KernelScenario& k, const PlatformConfig& p,
                         const std::function<void(const Machine&)>& inspect = {});

// Artifacts, all written to Options::out_dir:
//   run:     results.csv, summary.json, bars.dat, kernel.json (kernel section)
//   compare: the run artifacts plus ratios.json and compare.txt
//   trace:   trace_<metric>.jsonl
// Each returns an exit code and prints a short report on `out`; errors go
// to `err`.
int cmd_run(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_trace(const Options& opt, std::ostream& out, std::ostream& err);

// Serves an agent over byte streams. With `demo_writes` set, `in` is
// ignored and a generated client script is served instead; the decoded
// replies are summarized on `log`.
int cmd_loopback(std::istream& in, std::ostream& out, std::ostream& log,
                 std::optional<std::size_t> demo_writes);

}  // namespace ampsim::cli
