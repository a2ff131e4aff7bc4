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

#include "ampsim/bench/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ampsim::bench {
namespace {

std::size_t find_probe(const TraceLog& t, const Probe& p, std::size_t from) {
  return t.find(p.event, p.name, from);
}

void check(const std::vector<PlatformConfig>& platforms) {
  if (platforms.empty()) throw std::invalid_argument("suite needs at least one platform config");
}

SuiteReport skeleton(const std::vector<PlatformConfig>& platforms,
                     const std::vector<MetricId>& metrics) {
  SuiteReport r;
  r.metrics = metrics;
  for (const auto& p : platforms) r.configs.push_back(p.name);
  for (MetricId m : metrics) {
    for (const auto& p : platforms) {
      MetricReport e;
      e.metric = m;
      e.config = p.name;
      r.entries.push_back(std::move(e));
    }
  }
  return r;
}

MetricReport pingpong_report(const PlatformConfig& platform, const BenchConfig& cfg) {
  xrce::PingPongConfig pc = cfg.pingpong;
  pc.mode = platform.mode;
  pc.costs = platform.costs;
  const auto res = xrce::run_pingpong(pc, mix_seed(cfg.seed, "pingpong"));
  const SimClock clock(cfg.freq_hz);
  MetricReport r;
  r.metric = MetricId::kPingPong;
  r.config = platform.name;
  r.lost = res.lost;
  for (Cycles c : res.rtt) r.samples.push_back(clock.to_ns(c));
  return r;
}

}  // namespace

std::uint64_t MetricReport::min() const {
  return samples.empty() ? 0 : *std::min_element(samples.begin(), samples.end());
}

std::uint64_t MetricReport::max() const {
  return samples.empty() ? 0 : *std::max_element(samples.begin(), samples.end());
}

double MetricReport::avg() const {
  if (samples.empty()) return 0.0;
  const long double sum = std::accumulate(samples.begin(), samples.end(), 0.0L);
  return static_cast<double>(sum / samples.size());
}

std::uint64_t run_seed(std::uint64_t seed, MetricId metric, std::size_t run) {
  return mix_seed(mix_seed(seed, to_string(metric)), run);
}

Cycles draw_phase(const BenchConfig& cfg, MetricId metric, std::size_t run) {
  JitterSource j(run_seed(cfg.seed, metric, run));
  j.configure("phase", cfg.phase);
  return j.draw("phase");
}

std::uint64_t run_once(Engine& engine, const MetricScenario& s, const PlatformConfig& platform,
                       Cycles phase) {
  Machine m(engine, s.kernel, s.routing, platform);
  m.start();
  if (s.fire) {
    const std::string src = *s.fire;
    engine.schedule_at(kArrivalBase + phase, "bench", "arrival", {{"phase", phase}},
                       [&m, src] { m.raise(src); });
  }
  engine.run_until(s.horizon);
  m.settle();
  const TraceLog& t = engine.trace();
  const std::size_t a = find_probe(t, s.start, 0);
  if (a == t.size()) {
    throw ProbeError(std::string(to_string(s.metric)) + ": start probe '" + s.start.event + " " +
                     s.start.name + "' not in trace");
  }
  const std::size_t b = find_probe(t, s.stop, a);
  if (b == t.size()) {
    throw ProbeError(std::string(to_string(s.metric)) + ": stop probe '" + s.stop.event + " " +
                     s.stop.name + "' not in trace");
  }
  return t.entries()[b].cycle - t.entries()[a].cycle;
}

std::uint64_t run_once(MetricId metric, const PlatformConfig& platform, const BenchConfig& cfg,
                       std::size_t run) {
  Engine engine(EngineOptions{cfg.freq_hz, run_seed(cfg.seed, metric, run), 10'000});
  return run_once(engine, canonical_scenario(metric), platform, draw_phase(cfg, metric, run));
}

MetricReport run_metric(MetricId metric, const PlatformConfig& platform, const BenchConfig& cfg) {
  if (metric == MetricId::kPingPong) return pingpong_report(platform, cfg);
  MetricReport r;
  r.metric = metric;
  r.config = platform.name;
  r.samples.reserve(cfg.runs);
  for (std::size_t i = 0; i < cfg.runs; ++i) r.samples.push_back(run_once(metric, platform, cfg, i));
  return r;
}

SuiteReport run_suite_serial(const std::vector<PlatformConfig>& platforms,
                             const std::vector<MetricId>& metrics, const BenchConfig& cfg) {
  check(platforms);
  SuiteReport r = skeleton(platforms, metrics);
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    for (std::size_t c = 0; c < platforms.size(); ++c) {
      r.entries[m * platforms.size() + c] = run_metric(metrics[m], platforms[c], cfg);
    }
  }
  return r;
}

SuiteReport run_suite(const std::vector<PlatformConfig>& platforms,
                      const std::vector<MetricId>& metrics, const BenchConfig& cfg, int jobs) {
  check(platforms);
  SuiteReport r = skeleton(platforms, metrics);
  const std::size_t nc = platforms.size();
  // Flat work list: one item per kernel-metric run, one per pingpong cell.
  struct Item {
    std::size_t cell;
    std::size_t run;
  };
  std::vector<Item> items;
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t cell = m * nc + c;
      if (metrics[m] == MetricId::kPingPong) {
        items.push_back({cell, 0});
      } else {
        r.entries[cell].samples.assign(cfg.runs, 0);
        for (std::size_t i = 0; i < cfg.runs; ++i) items.push_back({cell, i});
      }
    }
  }
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  const auto n = static_cast<std::int64_t>(items.size());
  // The lowest failing item wins so the reported error does not depend on
  // thread timing.
  std::exception_ptr error;
  std::int64_t error_at = n;
#pragma omp parallel for num_threads(threads) schedule(dynamic, 8)
  for (std::int64_t k = 0; k < n; ++k) {
    const Item it = items[static_cast<std::size_t>(k)];
    const MetricId metric = metrics[it.cell / nc];
    const PlatformConfig& platform = platforms[it.cell % nc];
    try {
      if (metric == MetricId::kPingPong) {
        r.entries[it.cell] = run_metric(metric, platform, cfg);
      } else {
        r.entries[it.cell].samples[it.run] = run_once(metric, platform, cfg, it.run);
      }
    } catch (...) {
#pragma omp critical(ampsim_suite_error)
      if (k < error_at) {
        error_at = k;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return r;
}

}  // namespace ampsim::bench
