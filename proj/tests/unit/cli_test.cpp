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

#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ampsim/bench/report.hpp"
#include "ampsim/cli/commands.hpp"
#include "ampsim/cli/scenario.hpp"
#include "ampsim/xrce/stream.hpp"

namespace ampsim::cli {
namespace {

namespace fs = std::filesystem;

std::string bundled(const char* name) { return std::string(AMPSIM_SCENARIO_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Fresh scratch directory per test, removed afterwards.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("ampsim_cli_" + std::to_string(::getpid()) + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  Options opts(const std::string& file, const std::string& out = "out") {
    Options o;
    o.file = file;
    o.out_dir = (dir_ / out).string();
    return o;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kMinimal = R"(name: tiny
platforms:
  - {name: clint, mode: clint_plic}
  - {name: clic, mode: clic}
bench:
  metrics: [isrentry, act]
  runs: 5
  seed: 3
)";

TEST_F(CliTest, MinimalScenarioRuns) {
  const auto o = opts(write("s.yaml", kMinimal));
  ASSERT_EQ(cmd_run(o, out_, err_), kExitOk) << err_.str();
  const auto summary = nlohmann::json::parse(slurp(fs::path(o.out_dir) / "summary.json"));
  EXPECT_EQ(summary["isrentry"]["clic"]["runs"], 5);
  EXPECT_EQ(summary["act"]["clint"]["unit"], "cycles");
  EXPECT_NE(out_.str().find("isrentry"), std::string::npos);
}

TEST_F(CliTest, UnknownKeyNamesKeyAndLine) {
  const auto o = opts(write("s.yaml", std::string(kMinimal) + "tsak: 1\n"));
  EXPECT_EQ(cmd_run(o, out_, err_), kExitValidation);
  EXPECT_NE(err_.str().find("'tsak'"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("line 9"), std::string::npos) << err_.str();
}

TEST_F(CliTest, NestedUnknownKeyIsRejected) {
  std::string text = kMinimal;
  text.replace(text.find("runs: 5"), 7, "rnus: 5");
  const auto o = opts(write("s.yaml", text));
  EXPECT_EQ(cmd_run(o, out_, err_), kExitValidation);
  EXPECT_NE(err_.str().find("'rnus' in 'bench'"), std::string::npos) << err_.str();
}

TEST_F(CliTest, SeedIsRequiredUnlessGiven) {
  std::string text = kMinimal;
  text.erase(text.find("  seed: 3\n"));
  auto o = opts(write("s.yaml", text));
  EXPECT_EQ(cmd_run(o, out_, err_), kExitValidation);
  EXPECT_NE(err_.str().find("seed"), std::string::npos);
  o.seed = 9;
  EXPECT_EQ(cmd_run(o, out_, err_), kExitOk) << err_.str();
}

TEST_F(CliTest, OverrideChangesRunCount) {
  auto o = opts(write("s.yaml", kMinimal));
  o.overrides = {"bench.runs=12"};
  ASSERT_EQ(cmd_run(o, out_, err_), kExitOk) << err_.str();
  const auto summary = nlohmann::json::parse(slurp(fs::path(o.out_dir) / "summary.json"));
  EXPECT_EQ(summary["act"]["clint"]["runs"], 12);
}

TEST_F(CliTest, MalformedOverrideIsValidationError) {
  auto o = opts(write("s.yaml", kMinimal));
  o.overrides = {"bench.runs"};
  EXPECT_EQ(cmd_run(o, out_, err_), kExitValidation);
  o.overrides = {"bench.nothing.deeper=1"};
  EXPECT_EQ(cmd_run(o, out_, err_), kExitValidation);
}

TEST_F(CliTest, ListOverrideAddressesPlatform) {
  Document doc = parse_document(kMinimal);
  apply_override(doc, "platforms.0.mode=clic");
  const Scenario s = build_scenario(doc);
  EXPECT_EQ(s.platforms[0].mode, ControllerMode::kClic);
  EXPECT_THROW(apply_override(doc, "platforms.7.mode=clic"), ScenarioError);
}

TEST_F(CliTest, ParseErrorIsValidationError) {
  const auto o = opts(write("s.yaml", "name: [unclosed\n"));
  EXPECT_EQ(cmd_run(o, out_, err_), kExitValidation);
  EXPECT_NE(err_.str().find("parse error"), std::string::npos);
}

TEST_F(CliTest, MissingFileIsValidationError) {
  EXPECT_EQ(cmd_run(opts((dir_ / "absent.yaml").string()), out_, err_), kExitValidation);
}

TEST_F(CliTest, JsonSyntaxAccepted) {
  const auto o = opts(write("s.json", R"({"platforms": [{"name": "a", "mode": "clic"}],
    "bench": {"metrics": ["act"], "runs": 2, "seed": 1}})"));
  EXPECT_EQ(cmd_run(o, out_, err_), kExitOk) << err_.str();
}

TEST_F(CliTest, IdenticalConfigsCompareAtUnity) {
  const auto o = opts(write("s.yaml", R"(platforms:
  - {name: a, mode: clic}
  - {name: b, mode: clic}
bench: {metrics: all, runs: 10, seed: 1}
)"));
  ASSERT_EQ(cmd_compare(o, out_, err_), kExitOk) << err_.str();
  const auto ratios = nlohmann::json::parse(slurp(fs::path(o.out_dir) / "ratios.json"));
  for (const auto& [metric, per] : ratios.items()) {
    EXPECT_DOUBLE_EQ(per["b"].get<double>(), 1.0) << metric;
  }
}

TEST_F(CliTest, BundledComparisonFavoursClic) {
  const auto o = opts(bundled("clint_vs_clic.yaml"));
  ASSERT_EQ(cmd_compare(o, out_, err_), kExitOk) << err_.str();
  const auto ratios = nlohmann::json::parse(slurp(fs::path(o.out_dir) / "ratios.json"));
  ASSERT_EQ(ratios.size(), 10u);
  for (const auto& [metric, per] : ratios.items()) {
    EXPECT_LE(per["clic"].get<double>(), 1.0) << metric;
  }
  EXPECT_TRUE(fs::exists(fs::path(o.out_dir) / "compare.txt"));
}

TEST_F(CliTest, CompareNeedsTwoConfigs) {
  const auto o = opts(write("s.yaml", R"(interrupt: {mode: clic}
bench: {metrics: [act], runs: 2, seed: 1}
)"));
  EXPECT_EQ(cmd_compare(o, out_, err_), kExitValidation);
  EXPECT_NE(err_.str().find("at least 2"), std::string::npos);
}

TEST_F(CliTest, TraceIsrEntryHasOneTrapEntry) {
  auto o = opts(bundled("clint_vs_clic.yaml"));
  o.metric = "isrentry";
  o.config = "clint";
  ASSERT_EQ(cmd_trace(o, out_, err_), kExitOk) << err_.str();
  std::ifstream in(fs::path(o.out_dir) / "trace_isrentry.jsonl");
  std::size_t trap_entries = 0;
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line); ++lines) {
    if (nlohmann::json::parse(line)["event"] == "trap_entry") ++trap_entries;
  }
  EXPECT_GT(lines, 0u);
  EXPECT_EQ(trap_entries, 1u);
}

TEST_F(CliTest, TracePingPongDoorbellPerRound) {
  auto o = opts(bundled("pingpong_paper.yaml"));
  o.metric = "pingpong";
  o.overrides = {"xrce.rounds=15"};
  ASSERT_EQ(cmd_trace(o, out_, err_), kExitOk) << err_.str();
  std::ifstream in(fs::path(o.out_dir) / "trace_pingpong.jsonl");
  std::size_t doorbells = 0;
  for (std::string line; std::getline(in, line);) {
    if (nlohmann::json::parse(line)["event"] == "doorbell") ++doorbells;
  }
  EXPECT_EQ(doorbells, 15u);
}

TEST_F(CliTest, TraceUnknownMetricListsNames) {
  auto o = opts(bundled("clint_vs_clic.yaml"));
  o.metric = "isrentri";
  EXPECT_EQ(cmd_trace(o, out_, err_), kExitValidation);
  EXPECT_NE(err_.str().find("isrentry"), std::string::npos) << err_.str();
  o.metric = "act";
  o.config = "nope";
  EXPECT_EQ(cmd_trace(o, out_, err_), kExitValidation);
}

TEST_F(CliTest, SameSeedSameArtifacts) {
  const auto a = opts(bundled("isr2_optimization.yaml"), "a");
  auto b = opts(bundled("isr2_optimization.yaml"), "b");
  b.jobs = 3;
  ASSERT_EQ(cmd_run(a, out_, err_), kExitOk) << err_.str();
  ASSERT_EQ(cmd_run(b, out_, err_), kExitOk) << err_.str();
  for (const char* f : {"results.csv", "summary.json", "bars.dat"}) {
    EXPECT_EQ(slurp(fs::path(a.out_dir) / f), slurp(fs::path(b.out_dir) / f)) << f;
  }
}

TEST_F(CliTest, SummaryMatchesLibraryCall) {
  const auto o = opts(bundled("clint_vs_clic.yaml"));
  ASSERT_EQ(cmd_run(o, out_, err_), kExitOk);
  const Scenario s = load_scenario(o.file);
  const auto r = bench::run_suite_serial(s.platforms, s.metrics, s.bench);
  EXPECT_EQ(slurp(fs::path(o.out_dir) / "summary.json"), bench::summary_json(r).dump(2) + "\n");
}

const char* kKernel = R"(interrupt:
  mode: clic
  lines:
    - {name: can, plic_source: 1, clic_line: 16, shv: true}
  stimuli:
    - {source: can, at: 500}
kernel:
  horizon: 20000
  tasks:
    - {name: idle_loop, priority: 1, autostart: true, body: ["compute 5000"]}
    - {name: handler, priority: 4, body: ["probe handled"]}
  isrs:
    - {name: can_rx, category: ISR2, source: can, level: 2, body: ["activate handler"]}
bench: {metrics: [act], runs: 2, seed: 1}
)";

TEST_F(CliTest, KernelSectionWritesKernelJson) {
  const auto o = opts(write("k.yaml", kKernel));
  ASSERT_EQ(cmd_run(o, out_, err_), kExitOk) << err_.str();
  const auto k = nlohmann::json::parse(slurp(fs::path(o.out_dir) / "kernel.json"));
  ASSERT_TRUE(k.contains("clic"));
  EXPECT_EQ(k["clic"]["probes"].size(), 1u);
  EXPECT_EQ(k["clic"]["probes"][0]["name"], "handled");
  EXPECT_TRUE(k["clic"]["os_errors"].empty());
}

TEST_F(CliTest, KernelSectionTraceable) {
  auto o = opts(write("k.yaml", kKernel));
  o.metric = "kernel";
  ASSERT_EQ(cmd_trace(o, out_, err_), kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(fs::path(o.out_dir) / "trace_kernel.jsonl"));
}

TEST_F(CliTest, UnresolvedNamesAreValidationErrors) {
  std::string text = kKernel;
  text.replace(text.find("activate handler"), 16, "activate nobody");
  EXPECT_EQ(cmd_run(opts(write("a.yaml", text)), out_, err_), kExitValidation);
  text = kKernel;
  text.replace(text.find("source: can, level"), 11, "source: spi");
  EXPECT_EQ(cmd_run(opts(write("b.yaml", text)), out_, err_), kExitValidation);
}

TEST_F(CliTest, LostRoundsExitWithTimeout) {
  auto o = opts(bundled("pingpong_paper.yaml"));
  o.overrides = {"xrce.rounds=5", "xrce.timeout_ms=1"};
  EXPECT_EQ(cmd_run(o, out_, err_), kExitTimeout);
}

TEST_F(CliTest, LoopbackDemoRoundTrips) {
  std::istringstream in;
  std::ostringstream frames, log;
  EXPECT_EQ(cmd_loopback(in, frames, log, 4), kExitOk);
  EXPECT_FALSE(frames.str().empty());
  EXPECT_NE(log.str().find("data echoed: 4"), std::string::npos) << log.str();
  EXPECT_FALSE(xrce::split_frames(xrce::to_bytes(frames.str())).empty());
}

}  // namespace
}  // namespace ampsim::cli
