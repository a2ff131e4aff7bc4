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

#include <algorithm>
#include <sstream>

#include "ampsim/bench/harness.hpp"
#include "ampsim/bench/metric.hpp"
#include "ampsim/bench/report.hpp"

namespace ampsim::bench {
namespace {

PlatformConfig plat(const char* name, ControllerMode mode, bool optimized = true) {
  PlatformConfig p;
  p.name = name;
  p.mode = mode;
  p.isr2_optimized = optimized;
  return p;
}

const PlatformConfig kClint = plat("clint", ControllerMode::kClintPlic);
const PlatformConfig kClic = plat("clic", ControllerMode::kClic);

BenchConfig fixed_phase(Cycles phase, std::size_t runs = 100) {
  BenchConfig c;
  c.runs = runs;
  c.phase = {phase, phase};
  return c;
}

TEST(Metric, NamesRoundTrip) {
  for (MetricId m : rtos_metrics()) EXPECT_EQ(parse_metric(to_string(m)), m);
  EXPECT_EQ(parse_metric("pingpong"), MetricId::kPingPong);
  EXPECT_EQ(rtos_metrics().size(), 10u);
  try {
    parse_metric("isrenrty");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("isrentry"), std::string::npos);
  }
}

// Phase 0 lands in the victim's compute stretch, so the path is unmasked:
// trap_entry 12 + cause decode 14 + plic claim 8 + save 16*2.
TEST(RunMetric, IsrEntryZeroJitterClosedForm) {
  const auto r = run_metric(MetricId::kIsrEntry, kClint, fixed_phase(0));
  ASSERT_EQ(r.samples.size(), 100u);
  EXPECT_EQ(r.min(), 66u);
  EXPECT_EQ(r.max(), 66u);
  const auto v = run_metric(MetricId::kIsrEntry, kClic, fixed_phase(0));
  EXPECT_EQ(v.max(), 12u + 4u + 32u);  // vector fetch instead of decode and claim
}

TEST(RunMetric, IntDisableConstant) {
  BenchConfig c;
  c.seed = 3;
  const auto r = run_metric(MetricId::kIntDisable, kClint, c);
  EXPECT_EQ(r.samples.size(), 100u);
  EXPECT_EQ(r.min(), r.max());
}

TEST(RunMetric, Isr2OptimizationHelps) {
  BenchConfig c;
  c.seed = 8;
  for (auto mode : {ControllerMode::kClintPlic, ControllerMode::kClic}) {
    const auto fast = run_metric(MetricId::kIsr2Entry, plat("o", mode, true), c);
    const auto slow = run_metric(MetricId::kIsr2Entry, plat("u", mode, false), c);
    EXPECT_LT(fast.max(), slow.max());
  }
}

// Oracle: sweep every phase of the victim loop. The masked window opens
// with the disable CSR write and ends when the enable CSR write retires:
// 2 + 20 + 24 + 20 + 2 = 68 cycles, so an arrival one cycle after the mask
// waits 67 cycles on top of the unmasked entry path.
TEST(RunMetric, WorstPhaseIsJustAfterTheMask) {
  for (const auto& [p, entry] : {std::pair{kClint, Cycles{66}}, std::pair{kClic, Cycles{48}}}) {
    Cycles worst = 0;
    for (Cycles phase = 0; phase < kVictimPeriod; ++phase) {
      worst = std::max(worst, run_metric(MetricId::kIsrEntry, p, fixed_phase(phase, 1)).max());
    }
    EXPECT_EQ(worst, entry + 67) << p.name;
    BenchConfig c;
    c.seed = 99;
    EXPECT_LE(run_metric(MetricId::kIsrEntry, p, c).max(), worst);
  }
}

TEST(RunMetric, ClicNeverWorseAndStrictOnSpikes) {
  BenchConfig c;
  c.seed = 1234;
  for (MetricId m : rtos_metrics()) {
    const auto a = run_metric(m, kClint, c);
    const auto b = run_metric(m, kClic, c);
    EXPECT_LE(b.max(), a.max()) << to_string(m);
    if (m == MetricId::kIsrEntry || m == MetricId::kIsr2Entry || m == MetricId::kActl) {
      EXPECT_LT(b.max(), a.max()) << to_string(m);
    }
  }
}

TEST(RunMetric, Isr1CheaperThanIsr2) {
  BenchConfig c;
  c.seed = 2;
  for (const auto& p : {kClint, kClic}) {
    EXPECT_LT(run_metric(MetricId::kIsrEntry, p, c).max(),
              run_metric(MetricId::kIsr2Entry, p, c).max());
  }
}

TEST(RunMetric, ExitScenariosResumeTheVictim) {
  for (MetricId m : {MetricId::kIsrExit, MetricId::kIstExit}) {
    for (const auto& p : {kClint, kClic}) {
      for (Cycles phase : {Cycles{0}, Cycles{41}, Cycles{77}}) {
        Engine e;
        run_once(e, canonical_scenario(m), p, phase);
        const auto& t = e.trace();
        const std::size_t resume = t.find("task_resume", "victim");
        ASSERT_LT(resume, t.size());
      }
    }
  }
}

TEST(RunMetric, FinalKernelStateIndependentOfIsr2Flavor) {
  for (auto mode : {ControllerMode::kClintPlic, ControllerMode::kClic}) {
    for (Cycles phase : {Cycles{0}, Cycles{50}, Cycles{100}}) {
      nlohmann::json states[2];
      for (int opt = 0; opt < 2; ++opt) {
        Engine e;
        const auto s = canonical_scenario(MetricId::kIstEntry);
        Machine m(e, s.kernel, s.routing, plat("x", mode, opt == 1));
        m.start();
        e.schedule_at(kArrivalBase + phase, "bench", "arrival", {}, [&] { m.raise(kBenchSource); });
        e.run_until(s.horizon);
        states[opt] = kernel_state(m);
        EXPECT_EQ(states[opt]["current"], "victim");
        EXPECT_EQ(states[opt]["isr_depth"], 0);
      }
      EXPECT_EQ(states[0], states[1]);
    }
  }
}

TEST(RunMetric, MissingProbeIsReported) {
  auto s = canonical_scenario(MetricId::kAct);
  s.stop = {"probe", "nowhere"};
  Engine e;
  EXPECT_THROW(run_once(e, s, kClint, 0), ProbeError);
}

TEST(RunMetric, ReproducibleUnderSeed) {
  BenchConfig c;
  c.seed = 17;
  EXPECT_EQ(run_metric(MetricId::kIsr2Entry, kClic, c).samples,
            run_metric(MetricId::kIsr2Entry, kClic, c).samples);
  BenchConfig d = c;
  d.seed = 18;
  EXPECT_NE(run_metric(MetricId::kIsr2Entry, kClic, c).samples,
            run_metric(MetricId::kIsr2Entry, kClic, d).samples);
}

TEST(RunMetric, PingPongNearTwoPeriods) {
  BenchConfig c;
  c.seed = 42;
  const auto r = run_metric(MetricId::kPingPong, kClic, c);
  EXPECT_EQ(r.samples.size(), 1000u);
  EXPECT_EQ(r.lost, 0u);
  EXPECT_NEAR(static_cast<double>(r.min()), 2.0e6, 0.5e6);
  EXPECT_STREQ(r.unit(), "ns");
}

TEST(Suite, ParallelMatchesSerial) {
  BenchConfig c;
  c.seed = 5;
  c.runs = 30;
  c.pingpong.rounds = 50;
  std::vector<MetricId> metrics = rtos_metrics();
  metrics.push_back(MetricId::kPingPong);
  const auto ref = run_suite_serial({kClint, kClic}, metrics, c);
  for (int jobs : {1, 2, 4}) {
    const auto got = run_suite({kClint, kClic}, metrics, c, jobs);
    ASSERT_EQ(got.entries.size(), ref.entries.size());
    for (std::size_t i = 0; i < ref.entries.size(); ++i) {
      EXPECT_EQ(got.entries[i].samples, ref.entries[i].samples) << i;
      EXPECT_EQ(got.entries[i].config, ref.entries[i].config);
    }
  }
}

TEST(Suite, ConfigOrderOnlyReordersColumns) {
  BenchConfig c;
  c.seed = 6;
  c.runs = 20;
  const auto ab = run_suite({kClint, kClic}, rtos_metrics(), c, 1);
  const auto ba = run_suite({kClic, kClint}, rtos_metrics(), c, 1);
  for (std::size_t m = 0; m < ab.metrics.size(); ++m) {
    EXPECT_EQ(ab.at(m, 0).samples, ba.at(m, 1).samples);
    EXPECT_EQ(ab.at(m, 1).samples, ba.at(m, 0).samples);
  }
}

TEST(Suite, SingleConfigAndEmpty) {
  BenchConfig c;
  c.runs = 3;
  const auto one = run_suite({kClint}, {MetricId::kAct}, c, 1);
  EXPECT_EQ(one.configs.size(), 1u);
  EXPECT_TRUE(ratios_json(one).empty());
  EXPECT_THROW(run_suite({}, {MetricId::kAct}, c, 1), std::invalid_argument);
}

TEST(Report, CsvJsonAndTables) {
  BenchConfig c;
  c.runs = 4;
  const auto r = run_suite({kClint, kClic}, {MetricId::kIsrEntry, MetricId::kAct}, c, 1);
  std::ostringstream csv;
  write_csv(csv, r);
  const std::string s = csv.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 2 * 2 * 4);
  EXPECT_EQ(s.substr(0, s.find('\n')), "metric,config,run,cycles,ns");
  EXPECT_NE(s.find("act,clint,0,66,1320\n"), std::string::npos);  // 66 cycles at 50 MHz

  const auto j = summary_json(r);
  EXPECT_EQ(j["act"]["clic"]["max"], 64);
  EXPECT_EQ(j["act"]["clic"]["runs"], 4);
  EXPECT_LT(ratios_json(r)["isrentry"]["clic"].get<double>(), 1.0);

  const std::string g = gnuplot_table(r);
  EXPECT_NE(g.find("# metric clint clic\n"), std::string::npos);
  EXPECT_NE(g.find("act 66 64\n"), std::string::npos);
  EXPECT_NE(comparison_table(r).find("clic/clint"), std::string::npos);
}

TEST(Report, IdenticalConfigsGiveUnitRatios) {
  BenchConfig c;
  c.runs = 5;
  PlatformConfig twin = kClic;
  twin.name = "clic2";
  const auto r = run_suite({kClic, twin}, rtos_metrics(), c, 1);
  const auto j = ratios_json(r);
  EXPECT_EQ(j.size(), 10u);
  for (const auto& el : j.items()) {
    EXPECT_EQ(el.value().at("clic2").get<double>(), 1.0) << el.key();
  }
}

}  // namespace
}  // namespace ampsim::bench
