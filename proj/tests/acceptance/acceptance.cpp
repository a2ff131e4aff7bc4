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

// Acceptance suite. Each check prints one line:
//   AC-<n> PASS|FAIL <seconds>s <title>: <detail>
// With arguments, only the named checks run ("AC-2 AC-5").

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ampsim/bench/harness.hpp"
#include "ampsim/bench/metric.hpp"
#include "ampsim/cli/commands.hpp"
#include "ampsim/fabric/clic.hpp"
#include "ampsim/fabric/plic.hpp"
#include "ampsim/xrce/pingpong.hpp"
#include "oracles.hpp"
#include "ref_kernel.hpp"
#include "rig.hpp"

namespace {

using namespace ampsim;
using bench::MetricId;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    if (!detail.empty()) detail += "; ";
    detail += what;
    pass = false;
  }
};

struct Check {
  const char* id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

PlatformConfig plat(const char* name, ControllerMode mode, bool optimized = true) {
  PlatformConfig p;
  p.name = name;
  p.mode = mode;
  p.isr2_optimized = optimized;
  return p;
}

std::string num(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

Outcome clic_beats_clint() {
  Outcome o;
  bench::BenchConfig cfg;
  cfg.seed = 42;
  const auto& metrics = bench::rtos_metrics();
  const auto r = bench::run_suite({plat("clint", ControllerMode::kClintPlic),
                                   plat("clic", ControllerMode::kClic)},
                                  metrics, cfg);
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    const auto clint = r.at(m, 0).max();
    const auto clic = r.at(m, 1).max();
    const std::string name = bench::to_string(metrics[m]);
    o.require(clic <= clint, name + " clic " + std::to_string(clic) + " > clint " +
                                 std::to_string(clint));
    const bool strict = metrics[m] == MetricId::kIsrEntry || metrics[m] == MetricId::kIsr2Entry ||
                        metrics[m] == MetricId::kActl;
    if (strict) {
      o.require(clic < clint, name + " clic not strictly below clint");
      o.detail += (o.detail.empty() ? "" : ", ") + name + " " + std::to_string(clint) + "->" +
                  std::to_string(clic);
    }
    if (metrics[m] == MetricId::kIsrEntry) {
      const CostModel c;
      const auto floor =
          c.plic_claim_access + c.software_cause_decode - c.vector_table_fetch;
      o.require(clint - clic >= floor, "isrentry reduction " + std::to_string(clint - clic) +
                                           " below " + std::to_string(floor));
    }
  }
  return o;
}

std::pair<std::uint64_t, std::uint64_t> burst(std::size_t k, bool mnxti) {
  using testing::script;
  KernelConfig kc;
  TaskConfig t;
  t.name = "t";
  t.priority = 1;
  t.autostart = true;
  t.body = script({"compute 4000"});
  kc.tasks.push_back(t);
  for (std::size_t i = 0; i < k; ++i) {
    IsrConfig c;
    c.name = "i" + std::to_string(i);
    c.source = "dev" + std::to_string(i);
    c.category = IsrCategory::kIsr2;
    c.level = 1;
    c.body = script({"compute 20"});
    kc.isrs.push_back(c);
  }
  PlatformConfig p = plat("clic", ControllerMode::kClic);
  p.mnxti = mnxti;
  testing::Rig r(kc, testing::dev_routing(k, false), p);
  r.engine.schedule_at(100, "test", "burst", {}, [&] {
    for (std::size_t i = 0; i < k; ++i) r.machine->raise("dev" + std::to_string(i));
  });
  r.run();
  return {r.machine->hart().saves(), r.machine->hart().restores()};
}

Outcome tail_chaining() {
  Outcome o;
  for (std::size_t k = 2; k <= 8; ++k) {
    const auto with = burst(k, true);
    const auto without = burst(k, false);
    const std::string tag = "k=" + std::to_string(k);
    o.require(with.first == 1 && with.second == 1,
              tag + " mnxti saves/restores " + std::to_string(with.first) + "/" +
                  std::to_string(with.second));
    o.require(without.first == k && without.second == k,
              tag + " plain saves/restores " + std::to_string(without.first) + "/" +
                  std::to_string(without.second));
  }
  if (o.pass) o.detail = "k=2..8: 1/1 with mnxti, k/k without";
  return o;
}

Outcome isr2_direct_call() {
  Outcome o;
  bench::BenchConfig cfg;
  cfg.seed = 42;
  for (auto mode : {ControllerMode::kClintPlic, ControllerMode::kClic}) {
    const char* name = mode == ControllerMode::kClic ? "clic" : "clint";
    const auto direct = bench::run_metric(MetricId::kIsr2Entry, plat(name, mode, true), cfg);
    const auto task = bench::run_metric(MetricId::kIsr2Entry, plat(name, mode, false), cfg);
    o.require(direct.max() < task.max(), std::string(name) + " direct " +
                                             std::to_string(direct.max()) + " >= as-task " +
                                             std::to_string(task.max()));
    o.detail += (o.detail.empty() ? "" : ", ") + std::string(name) + " " +
                std::to_string(task.max()) + "->" + std::to_string(direct.max());

    for (std::size_t run = 0; run < cfg.runs; ++run) {
      const Cycles phase = bench::draw_phase(cfg, MetricId::kIsr2Entry, run);
      nlohmann::json states[2];
      for (int opt = 0; opt < 2; ++opt) {
        Engine e;
        e.trace().set_enabled(false);
        const auto s = bench::canonical_scenario(MetricId::kIsr2Entry);
        Machine m(e, s.kernel, s.routing, plat(name, mode, opt == 1));
        m.start();
        e.schedule_at(bench::kArrivalBase + phase, "bench", "arrival", {},
                      [&] { m.raise(bench::kBenchSource); });
        e.run_until(s.horizon);
        states[opt] = bench::kernel_state(m);
      }
      if (states[0] != states[1]) {
        o.require(false, std::string(name) + " final kernel state differs at phase " +
                             std::to_string(phase));
        break;
      }
    }
  }
  return o;
}

Outcome pingpong() {
  Outcome o;
  xrce::PingPongConfig cfg;
  const auto base = xrce::run_pingpong(cfg, 2024);
  o.require(base.rtt.size() >= 1000, "only " + std::to_string(base.rtt.size()) + " rounds");
  o.require(base.lost == 0, std::to_string(base.lost) + " rounds lost");
  const double lo = base.min_ms(), avg = base.avg_ms(), hi = base.max_ms();
  o.require(lo >= 1.5 && lo <= 2.5, "min " + num(lo) + " ms outside [1.5, 2.5]");
  o.require(avg >= 1.8 && avg <= 2.8, "avg " + num(avg) + " ms outside [1.8, 2.8]");
  o.require(hi <= 4.5, "max " + num(hi) + " ms above 4.5");
  o.require(lo <= avg && avg <= hi, "min <= avg <= max violated");
  std::string scaling;
  for (const auto& [period, factor] : {std::pair{500u, 0.5}, std::pair{2000u, 2.0}}) {
    xrce::PingPongConfig c = cfg;
    c.spin_period_us = period;
    const auto r = xrce::run_pingpong(c, 2024);
    const double ratio = r.min_ms() / lo;
    o.require(r.lost == 0, "P=" + std::to_string(period) + "us lost rounds");
    o.require(std::abs(ratio - factor) <= 0.1 * factor,
              "P=" + std::to_string(period) + "us min ratio " + num(ratio));
    scaling += " x" + num(factor, 1) + "->" + num(ratio);
  }
  if (o.pass) {
    o.detail = "min/avg/max " + num(lo) + "/" + num(avg) + "/" + num(hi) + " ms over " +
               std::to_string(base.rtt.size()) + " rounds; min scaling" + scaling;
  }
  return o;
}

Outcome scheduler_oracle() {
  Outcome o;
  std::mt19937_64 rng(5);
  const std::size_t kScenarios = 10'000;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < kScenarios && o.pass; ++i) {
    const auto s = oracle::bounded_scenario(rng);
    for (auto mode : {ControllerMode::kClintPlic, ControllerMode::kClic}) {
      const auto want = oracle::RefKernel(s.kernel, mode == ControllerMode::kClic).run();
      for (bool optimized : {false, true}) {
        const auto got = oracle::machine_log(s, mode, optimized);
        ++compared;
        if (got != want) {
          o.require(false, "scenario " + std::to_string(i) + " diverges (" +
                               (mode == ControllerMode::kClic ? "clic" : "clint") +
                               (optimized ? ", direct" : ", as-task") + ")");
          break;
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " logs match the reference";
  return o;
}

Outcome arbitration_oracles() {
  Outcome o;
  std::uint64_t plic_checks = 0;
  // PLIC: 4 sources, every priority 0..7, pending and enable subset, threshold.
  std::vector<oracle::PlicSource> ref(4);
  for (std::uint32_t prios = 0; prios < (1u << 12) && o.pass; ++prios) {
    for (std::uint32_t pe = 0; pe < 256 && o.pass; ++pe) {
      Plic p(4);
      for (std::uint32_t s = 0; s < 4; ++s) {
        const std::uint32_t prio = (prios >> (3 * s)) & 7u;
        const bool pend = (pe >> s) & 1u;
        const bool en = (pe >> (s + 4)) & 1u;
        p.set_priority(s + 1, prio);
        p.set_enable(0, s + 1, en);
        if (pend) p.pulse(s + 1);
        ref[s] = {prio, pend, en, false};
      }
      for (std::uint32_t th = 0; th < 8; ++th) {
        p.set_threshold(0, th);
        ++plic_checks;
        if (p.claim(0) != oracle::plic_claim(ref, th)) {
          o.require(false, "plic mismatch prios=" + std::to_string(prios) +
                               " pe=" + std::to_string(pe) + " th=" + std::to_string(th));
          break;
        }
        // Undo the claim so the next threshold sees the same state.
        for (std::uint32_t s = 1; s <= 4; ++s) {
          if (p.claimed(s)) {
            p.complete(0, s);
            if (ref[s - 1].pending) p.pulse(s);
          }
        }
      }
    }
  }

  // CLIC: 4 lines, 2-bit level and 3-bit priority each. Sweep A covers
  // every ctl word with every pending/enable pair, threshold pair rotating;
  // sweep B covers every ctl word, eligible set and threshold pair.
  std::uint64_t clic_checks = 0;
  std::vector<oracle::ClicLine> lines(4);
  auto compare = [&](const Clic& c, std::uint8_t run, std::uint8_t th) {
    ++clic_checks;
    const auto got = c.arbitrate(run, th);
    const auto want = oracle::clic_arbitrate(lines, run, th);
    return got.has_value() == want.has_value() && (!got || got->id == *want);
  };
  auto set_state = [&](Clic& c, std::uint32_t line, bool pend, bool en) {
    c.set_pending(line, pend);
    c.set_enable(line, en);
    lines[line].pending = pend;
    lines[line].enabled = en;
  };
  for (std::uint32_t cfg = 0; cfg < (1u << 20) && o.pass; ++cfg) {
    Clic c(4);
    for (std::uint32_t i = 0; i < 4; ++i) {
      const auto level = static_cast<std::uint8_t>((cfg >> (5 * i)) & 3u);
      const auto prio = static_cast<std::uint8_t>((cfg >> (5 * i + 2)) & 7u);
      c.configure(i, ClicLineConfig{false, Trigger::kEdge, false, Clic::make_ctl(level, prio)});
      lines[i] = {i, level, prio, false, false};
    }
    for (std::uint32_t pe = 0; pe < 256; ++pe) {
      for (std::uint32_t i = 0; i < 4; ++i) set_state(c, i, (pe >> i) & 1u, (pe >> (i + 4)) & 1u);
      const std::uint32_t pair = (cfg + pe) & 15u;
      if (!compare(c, pair & 3u, pair >> 2)) {
        o.require(false, "clic mismatch cfg=" + std::to_string(cfg) + " pe=" + std::to_string(pe));
        break;
      }
    }
    for (std::uint32_t elig = 0; elig < 16 && o.pass; ++elig) {
      for (std::uint32_t i = 0; i < 4; ++i) {
        // Ineligible lines rotate through pending-only, enabled-only, neither.
        const std::uint32_t form = (cfg + i) % 3;
        const bool on = (elig >> i) & 1u;
        set_state(c, i, on || form == 0, on || form == 1);
      }
      for (std::uint8_t run = 0; run < 4 && o.pass; ++run) {
        for (std::uint8_t th = 0; th < 4; ++th) {
          if (!compare(c, run, th)) {
            o.require(false, "clic mismatch cfg=" + std::to_string(cfg) +
                                 " eligible=" + std::to_string(elig));
            break;
          }
        }
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(plic_checks) + " plic and " + std::to_string(clic_checks) +
               " clic configurations match";
  }
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("ampsim_accept_" + std::to_string(::getpid()));
  std::vector<fs::path> dirs;
  for (int i = 0; i < 2; ++i) {
    cli::Options opt;
    opt.file = std::string(AMPSIM_SCENARIO_DIR) + "/clint_vs_clic.yaml";
    opt.seed = 42;
    opt.out_dir = (root / ("run" + std::to_string(i))).string();
    std::ostringstream out, err;
    const int code = cli::cmd_run(opt, out, err);
    o.require(code == cli::kExitOk, "run exited " + std::to_string(code) + ": " + err.str());
    dirs.push_back(opt.out_dir);
  }
  std::size_t files = 0;
  if (o.pass) {
    for (const char* name : {"results.csv", "summary.json", "bars.dat"}) {
      const auto a = slurp(dirs[0] / name);
      const auto b = slurp(dirs[1] / name);
      o.require(!a.empty(), std::string(name) + " missing");
      o.require(a == b, std::string(name) + " differs");
      ++files;
    }
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  if (o.pass) o.detail = std::to_string(files) + " artifacts byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Check> checks = {
      {"AC-1", "clic worst case at or below clint", 10, clic_beats_clint},
      {"AC-2", "mnxti tail chaining", 5, tail_chaining},
      {"AC-3", "direct-call isr2 entry", 5, isr2_direct_call},
      {"AC-4", "xrce ping-pong round trip", 30, pingpong},
      {"AC-5", "kernel against reference scheduler", 60, scheduler_oracle},
      {"AC-6", "arbitration against brute force", 60, arbitration_oracles},
      {"AC-7", "reproducible artifacts", 10, determinism},
  };
  std::vector<std::string> only(argv + 1, argv + argc);
  bool all_pass = true;
  std::size_t ran = 0;
  for (const auto& c : checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_s, "took " + num(secs, 1) + " s, budget " +
                                     num(c.budget_s, 0) + " s");
    std::printf("%s %s %6.2fs %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", secs, c.title,
                o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no check matches the arguments\n");
    return 2;
  }
  return all_pass ? 0 : 1;
}
