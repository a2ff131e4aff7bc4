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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ampsim/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace ampsim::cli;
  CLI::App app{"ampsim: interrupt latency and inter-domain communication simulator"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "Scenario file (YAML or JSON)")->required();
    sub->add_option("--seed", seed, "Override bench.seed");
    sub->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--override", opt.overrides, "Set a scenario key, e.g. bench.runs=100");
    sub->add_option("--jobs", opt.jobs, "Worker threads for the sweep (0: all cores)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* run = app.add_subcommand("run", "Run every metric on every platform");
  common(run);
  CLI::App* compare = app.add_subcommand("compare", "Side-by-side worst cases and ratios");
  common(compare);
  CLI::App* trace = app.add_subcommand("trace", "Write the event trace of one run");
  common(trace);
  trace->add_option("--metric", opt.metric, "Metric name")->required();
  std::string config;
  trace->add_option("--config", config, "Platform name (default: first)");

  CLI::App* loop = app.add_subcommand("loopback", "Serve the agent over a byte stream");
  std::string in_path;
  std::string out_path;
  std::size_t demo = 0;
  loop->add_option("--in", in_path, "Input frames (default: stdin)");
  loop->add_option("--out", out_path, "Output frames (default: stdout)");
  loop->add_option("--demo", demo, "Serve a generated session with N writes instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  for (CLI::App* sub : {run, compare, trace}) {
    if (sub->parsed() && sub->count("--seed") > 0) opt.seed = seed;
  }
  if (trace->count("--config") > 0) opt.config = config;

  if (run->parsed()) return cmd_run(opt, std::cout, std::cerr);
  if (compare->parsed()) return cmd_compare(opt, std::cout, std::cerr);
  if (trace->parsed()) return cmd_trace(opt, std::cout, std::cerr);

  std::ifstream fin;
  std::ofstream fout;
  if (!in_path.empty()) {
    fin.open(in_path, std::ios::binary);
    if (!fin) {
      std::cerr << "cannot open '" << in_path << "'\n";
      return kExitValidation;
    }
  }
  if (!out_path.empty()) {
    fout.open(out_path, std::ios::binary | std::ios::trunc);
    if (!fout) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return kExitValidation;
    }
  }
  std::istream& in = in_path.empty() ? std::cin : fin;
  // Demo frames are binary; they are only kept when --out names a file.
  std::ostream discard(nullptr);
  std::ostream& out = !out_path.empty() ? fout : loop->count("--demo") > 0 ? discard : std::cout;
  return cmd_loopback(in, out, std::cerr, loop->count("--demo") > 0 ? std::optional(demo) : std::nullopt);
}
