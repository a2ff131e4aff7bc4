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

#include "ampsim/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "ampsim/bench/report.hpp"
#include "ampsim/xrce/stream.hpp"

namespace ampsim::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

fs::path out_dir(const Options& opt) {
  fs::path d(opt.out_dir);
  std::error_code ec;
  fs::create_directories(d, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + d.string() + "'");
  return d;
}

std::size_t lost_rounds(const bench::SuiteReport& r) {
  std::size_t lost = 0;
  for (const auto& e : r.entries) lost += e.lost;
  return lost;
}

// Writes run artifacts; returns the exit code for lost pingpong rounds.
int emit_run(const Scenario& s, const bench::SuiteReport& r, const Options& opt, std::ostream& out) {
  const fs::path d = out_dir(opt);
  std::ostringstream csv;
  bench::write_csv(csv, r, s.bench.freq_hz);
  write_file(d / "results.csv", csv.str());
  write_file(d / "summary.json", bench::summary_json(r).dump(2) + "\n");
  write_file(d / "bars.dat", bench::gnuplot_table(r));
  if (s.kernel) write_file(d / "kernel.json", run_kernel_scenario(s).dump(2) + "\n");
  out << bench::comparison_table(r);
  const std::size_t lost = lost_rounds(r);
  if (lost > 0) {
    out << "pingpong: " << lost << " round(s) timed out\n";
    return kExitTimeout;
  }
  return kExitOk;
}

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

void run_kernel_scenario(Engine& engine, const KernelScenario& k, const PlatformConfig& p,
                         const std::function<void(const Machine&)>& inspect) {
  Machine m(engine, k.kernel, k.routing, p);
  m.start();
  for (const Stimulus& st : k.stimuli) {
    const std::string src = st.source;
    if (src == kSourceMtip) {
      m.set_timer(st.at);
    } else {
      engine.schedule_at(st.at, "dev", "stimulus", {{"name", src}}, [&m, src] { m.raise(src); });
    }
  }
  engine.run_until(k.horizon);
  m.settle();
  if (inspect) inspect(m);
}

json run_kernel_scenario(const Scenario& s) {
  json out = json::object();
  for (const PlatformConfig& p : s.platforms) {
    Engine engine(EngineOptions{s.bench.freq_hz, s.bench.seed, 10'000});
    run_kernel_scenario(engine, *s.kernel, p, [&](const Machine& m) {
      json probes = json::array();
      for (const auto& e : engine.trace().entries()) {
        if (e.event == "probe") {
          probes.push_back({{"name", e.data.value("name", "")}, {"cycle", e.cycle}});
        }
      }
      json charged = json::object();
      for (std::size_t i = 0; i < kPrimitiveCount; ++i) {
        const auto prim = static_cast<Primitive>(i);
        if (m.hart().charged(prim) > 0) charged[to_string(prim)] = m.hart().charged(prim);
      }
      json errors = json::array();
      for (const auto& e : m.os_errors()) {
        errors.push_back({{"cycle", e.cycle},
                          {"status", to_string(e.status)},
                          {"context", e.context},
                          {"service", e.service}});
      }
      out[p.name] = {{"state", bench::kernel_state(m)},
                     {"tail_chains", m.tail_chains()},
                     {"charged", charged},
                     {"probes", probes},
                     {"os_errors", errors}};
    });
  }
  return out;
}

int cmd_run(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(opt.file, opt.overrides, opt.seed);
    const auto r = bench::run_suite(s.platforms, s.metrics, s.bench, opt.jobs);
    return emit_run(s, r, opt, out);
  });
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(opt.file, opt.overrides, opt.seed);
    if (s.platforms.size() < 2) {
      throw ScenarioError("compare needs at least 2 platform configs, scenario '" + s.name +
                          "' declares " + std::to_string(s.platforms.size()));
    }
    const auto r = bench::run_suite(s.platforms, s.metrics, s.bench, opt.jobs);
    const fs::path d = out_dir(opt);
    write_file(d / "ratios.json", bench::ratios_json(r).dump(2) + "\n");
    write_file(d / "compare.txt", bench::comparison_table(r));
    return emit_run(s, r, opt, out);
  });
}

int cmd_trace(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(opt.file, opt.overrides, opt.seed);
    const PlatformConfig* p = &s.platforms.front();
    if (opt.config) {
      p = nullptr;
      for (const auto& c : s.platforms) {
        if (c.name == *opt.config) p = &c;
      }
      if (!p) throw ScenarioError("no platform named '" + *opt.config + "'");
    }
    auto engine = std::make_unique<Engine>(EngineOptions{s.bench.freq_hz, s.bench.seed, 10'000});
    if (opt.metric == "kernel") {
      if (!s.kernel) throw ScenarioError("metric 'kernel' needs a kernel section");
      run_kernel_scenario(*engine, *s.kernel, *p);
    } else {
      bench::MetricId id;
      try {
        id = bench::parse_metric(opt.metric);
      } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string(e.what()) + (s.kernel ? ", kernel" : ""));
      }
      // Same seeding as run 0 of the suite.
      if (id == bench::MetricId::kPingPong) {
        xrce::PingPongConfig pc = s.bench.pingpong;
        pc.mode = p->mode;
        pc.costs = p->costs;
        engine = std::make_unique<Engine>(
            EngineOptions{s.bench.freq_hz, mix_seed(s.bench.seed, "pingpong"), 10'000});
        xrce::PingPong pp(*engine, pc);
        pp.run();
      } else {
        engine = std::make_unique<Engine>(
            EngineOptions{s.bench.freq_hz, bench::run_seed(s.bench.seed, id, 0), 10'000});
        bench::run_once(*engine, bench::canonical_scenario(id), *p,
                        bench::draw_phase(s.bench, id, 0));
      }
    }
    const Engine& done = *engine;
    const fs::path path = out_dir(opt) / ("trace_" + opt.metric + ".jsonl");
    write_file(path, done.trace().to_jsonl());
    out << path.string() << ": " << done.trace().size() << " records\n";
    return kExitOk;
  });
}

int cmd_loopback(std::istream& in, std::ostream& out, std::ostream& log,
                 std::optional<std::size_t> demo_writes) {
  return guarded(log, [&] {
    if (!demo_writes) {
      xrce::StreamAgent agent(in, out);
      const std::size_t n = agent.serve();
      log << "frames in: " << n << ", frames out: " << agent.frames_out()
          << ", dropped: " << agent.agent().dropped() << "\n";
      return kExitOk;
    }
    const xrce::Bytes script = xrce::loopback_script(1, *demo_writes);
    std::istringstream src(std::string(script.begin(), script.end()));
    std::ostringstream sink;
    xrce::StreamAgent agent(src, sink);
    const std::size_t n = agent.serve();
    const std::string bytes = sink.str();
    out << bytes;
    std::size_t data = 0;
    std::size_t status = 0;
    for (const auto& m : xrce::split_frames(xrce::Bytes(bytes.begin(), bytes.end()))) {
      if (m.type == xrce::MessageType::kData) ++data;
      if (m.type == xrce::MessageType::kStatus && xrce::decode_status(m.payload).ok()) ++status;
    }
    log << "frames in: " << n << ", status ok: " << status << ", data echoed: " << data << "\n";
    if (data != *demo_writes) throw std::runtime_error("loopback lost data frames");
    return kExitOk;
  });
}

}  // namespace ampsim::cli
