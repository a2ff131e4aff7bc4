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

#include "ampsim/bench/metric.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace ampsim::bench {
namespace {

constexpr std::array<std::pair<MetricId, const char*>, 11> kNames{{
    {MetricId::kAct, "act"},
    {MetricId::kActl, "actl"},
    {MetricId::kIntDisable, "intdisable"},
    {MetricId::kIntEnable, "intenable"},
    {MetricId::kIsrEntry, "isrentry"},
    {MetricId::kIsr2Entry, "isr2entry"},
    {MetricId::kIsrExit, "isrexit"},
    {MetricId::kIstEntry, "istentry"},
    {MetricId::kIstExit, "istexit"},
    {MetricId::kTerml, "terml"},
    {MetricId::kPingPong, "pingpong"},
}};

std::vector<Action> parse(std::initializer_list<const char*> lines) {
  std::vector<Action> out;
  for (const char* l : lines) out.push_back(parse_action(l));
  return out;
}

TaskConfig make_task(const char* name, std::uint32_t prio, bool autostart,
                     std::vector<Action> body) {
  TaskConfig t;
  t.name = name;
  t.priority = prio;
  t.autostart = autostart;
  t.body = std::move(body);
  return t;
}

TaskConfig victim() {
  return make_task("victim", 1, true,
                   parse({"compute 40", "disable_all", "compute 24", "enable_all", "loop"}));
}

IsrConfig bench_isr(IsrCategory cat, std::vector<Action> body) {
  IsrConfig i;
  i.name = "bench";
  i.source = kBenchSource;
  i.category = cat;
  i.level = 1;
  i.body = std::move(body);
  return i;
}

RoutingConfig bench_routing() {
  SourceBinding b;
  b.name = kBenchSource;
  b.plic_source = 1;
  b.clic_line = 16;
  b.trigger = Trigger::kEdge;
  b.shv = true;
  RoutingConfig r;
  r.sources.push_back(b);
  return r;
}

}  // namespace

const char* to_string(MetricId id) {
  for (const auto& [m, n] : kNames) {
    if (m == id) return n;
  }
  return "?";
}

std::string metric_names() {
  std::string out;
  for (const auto& [m, n] : kNames) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

MetricId parse_metric(const std::string& name) {
  for (const auto& [m, n] : kNames) {
    if (name == n) return m;
  }
  throw std::invalid_argument("unknown metric '" + name + "'; valid metrics: " + metric_names());
}

const std::vector<MetricId>& rtos_metrics() {
  static const std::vector<MetricId> all{
      MetricId::kAct,      MetricId::kActl,      MetricId::kIntDisable, MetricId::kIntEnable,
      MetricId::kIsrEntry, MetricId::kIsr2Entry, MetricId::kIsrExit,    MetricId::kIstEntry,
      MetricId::kIstExit,  MetricId::kTerml};
  return all;
}

bool is_rtos_metric(MetricId id) { return id != MetricId::kPingPong; }

MetricScenario canonical_scenario(MetricId metric) {
  MetricScenario s;
  s.metric = metric;
  s.routing = bench_routing();
  s.horizon = kArrivalBase + kVictimPeriod + 4'000;
  KernelConfig& k = s.kernel;
  switch (metric) {
    case MetricId::kAct:
      k.tasks.push_back(make_task("low", 1, true, parse({"probe start", "activate high", "terminate"})));
      k.tasks.push_back(make_task("high", 2, false, parse({"probe stop", "terminate"})));
      s.start = {"probe", "start"};
      s.stop = {"probe", "stop"};
      break;
    case MetricId::kActl:
      k.tasks.push_back(make_task("low", 1, false, parse({"terminate"})));
      k.tasks.push_back(make_task(
          "high", 2, true, parse({"probe start", "activate low", "probe stop", "terminate"})));
      s.start = {"probe", "start"};
      s.stop = {"probe", "stop"};
      break;
    case MetricId::kTerml:
      k.tasks.push_back(
          make_task("low", 1, true, parse({"activate high", "probe stop", "terminate"})));
      k.tasks.push_back(make_task("high", 2, false, parse({"probe start", "terminate"})));
      s.start = {"probe", "start"};
      s.stop = {"probe", "stop"};
      break;
    case MetricId::kIntDisable:
    case MetricId::kIntEnable:
      k.tasks.push_back(make_task("t", 1, true,
                                  parse({"probe d0", "disable_all", "probe d1", "probe e0",
                                         "enable_all", "probe e1", "terminate"})));
      k.tasks.push_back(make_task("other", 2, false, parse({"terminate"})));
      if (metric == MetricId::kIntDisable) {
        s.start = {"probe", "d0"};
        s.stop = {"probe", "d1"};
      } else {
        s.start = {"probe", "e0"};
        s.stop = {"probe", "e1"};
      }
      break;
    case MetricId::kIsrEntry:
    case MetricId::kIsr2Entry:
      k.tasks.push_back(victim());
      k.tasks.push_back(make_task("other", 2, false, parse({"terminate"})));
      k.isrs.push_back(bench_isr(
          metric == MetricId::kIsrEntry ? IsrCategory::kIsr1 : IsrCategory::kIsr2,
          parse({"probe isr", "compute 10"})));
      s.fire = kBenchSource;
      s.start = {"irq_raise", kBenchSource};
      s.stop = {"probe", "isr"};
      break;
    case MetricId::kIsrExit:
      k.tasks.push_back(victim());
      k.tasks.push_back(make_task("other", 2, false, parse({"terminate"})));
      k.isrs.push_back(bench_isr(IsrCategory::kIsr2, parse({"compute 10", "probe isr_end"})));
      s.fire = kBenchSource;
      s.start = {"probe", "isr_end"};
      s.stop = {"task_resume", "victim"};
      break;
    case MetricId::kIstEntry:
    case MetricId::kIstExit:
      k.tasks.push_back(victim());
      k.tasks.push_back(make_task("high", 2, false,
                                  parse({"probe task", "compute 10", "probe task_end", "terminate"})));
      k.isrs.push_back(bench_isr(IsrCategory::kIsr2, parse({"activate high", "probe isr_end"})));
      s.fire = kBenchSource;
      if (metric == MetricId::kIstEntry) {
        s.start = {"probe", "isr_end"};
        s.stop = {"probe", "task"};
      } else {
        s.start = {"probe", "task_end"};
        s.stop = {"task_resume", "victim"};
      }
      break;
    case MetricId::kPingPong:
      throw std::invalid_argument("pingpong has no kernel scenario");
  }
  return s;
}

nlohmann::json kernel_state(const Machine& m) {
  nlohmann::json tasks = nlohmann::json::array();
  const Scheduler& s = m.scheduler();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const TaskControlBlock& t = s.tcb(i);
    tasks.push_back({{"name", t.name},
                     {"state", to_string(t.state)},
                     {"activations", t.activations},
                     {"starts", m.task_starts(t.name)}});
  }
  nlohmann::json out;
  out["tasks"] = tasks;
  out["current"] = s.current() ? nlohmann::json(s.tcb(*s.current()).name) : nlohmann::json();
  out["ready"] = s.ready_order();
  out["isr_depth"] = m.isr_depth();
  out["interrupts"] = m.interrupts_taken();
  out["os_errors"] = m.os_errors().size();
  return out;
}

}  // namespace ampsim::bench
