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

#include "ampsim/rtos/config.hpp"

#include <set>
#include <sstream>

namespace ampsim {

const char* to_string(OsStatus status) {
  switch (status) {
    case OsStatus::kOk: return "E_OK";
    case OsStatus::kLimit: return "E_OS_LIMIT";
    case OsStatus::kCallLevel: return "E_OS_CALLEVEL";
    case OsStatus::kDisabledInt: return "E_OS_DISABLEDINT";
    case OsStatus::kState: return "E_OS_STATE";
    case OsStatus::kNoFunc: return "E_OS_NOFUNC";
  }
  return "?";
}

const char* to_string(IsrCategory category) {
  return category == IsrCategory::kIsr1 ? "ISR1" : "ISR2";
}

const char* to_string(Isr2Dispatch dispatch) {
  return dispatch == Isr2Dispatch::kAsTask ? "AS_TASK" : "DIRECT_CALL";
}

IsrCategory parse_isr_category(const std::string& text) {
  if (text == "ISR1" || text == "isr1") return IsrCategory::kIsr1;
  if (text == "ISR2" || text == "isr2") return IsrCategory::kIsr2;
  throw ConfigError("unknown ISR category '" + text + "' (expected ISR1 or ISR2)");
}

Isr2Dispatch parse_isr2_dispatch(const std::string& text) {
  if (text == "AS_TASK" || text == "as_task") return Isr2Dispatch::kAsTask;
  if (text == "DIRECT_CALL" || text == "direct_call") return Isr2Dispatch::kDirectCall;
  throw ConfigError("unknown ISR2 dispatch '" + text + "' (expected AS_TASK or DIRECT_CALL)");
}

Action parse_action(const std::string& text) {
  std::istringstream in(text);
  std::string verb, arg, extra;
  in >> verb >> arg >> extra;
  if (!extra.empty()) throw ConfigError("trailing input in action '" + text + "'");
  auto need_arg = [&] {
    if (arg.empty()) throw ConfigError("action '" + verb + "' needs an argument");
  };
  auto no_arg = [&] {
    if (!arg.empty()) throw ConfigError("action '" + verb + "' takes no argument");
  };
  if (verb == "compute") {
    need_arg();
    Cycles n = 0;
    try {
      std::size_t used = 0;
      n = std::stoull(arg, &used);
      if (used != arg.size() || arg[0] == '-') throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw ConfigError("compute needs a cycle count, got '" + arg + "'");
    }
    return Action::compute(n);
  }
  if (verb == "probe") return need_arg(), Action::probe(arg);
  if (verb == "activate") return need_arg(), Action::activate(arg);
  if (verb == "trigger") return need_arg(), Action::trigger(arg);
  if (verb == "terminate") return no_arg(), Action::terminate();
  if (verb == "disable_all") return no_arg(), Action::disable_all();
  if (verb == "enable_all") return no_arg(), Action::enable_all();
  if (verb == "loop") return no_arg(), Action::loop();
  throw ConfigError("unknown action '" + text + "'");
}

std::string to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::kCompute: return "compute " + std::to_string(a.cycles);
    case ActionKind::kProbe: return "probe " + a.target;
    case ActionKind::kActivate: return "activate " + a.target;
    case ActionKind::kTerminate: return "terminate";
    case ActionKind::kDisableAll: return "disable_all";
    case ActionKind::kEnableAll: return "enable_all";
    case ActionKind::kTrigger: return "trigger " + a.target;
    case ActionKind::kLoop: return "loop";
    case ActionKind::kNative: return "native " + a.target;
  }
  return "?";
}

void KernelConfig::validate() const {
  std::set<std::string> tasks_seen;
  for (const auto& t : tasks) {
    if (t.name.empty()) throw ConfigError("task without a name");
    if (!tasks_seen.insert(t.name).second) throw ConfigError("duplicate task '" + t.name + "'");
    if (t.max_activations == 0) {
      throw ConfigError("task '" + t.name + "': max_activations must be >= 1");
    }
  }
  std::set<std::string> isrs_seen;
  std::set<std::string> sources;
  for (const auto& i : isrs) {
    if (i.name.empty()) throw ConfigError("ISR without a name");
    if (!isrs_seen.insert(i.name).second) throw ConfigError("duplicate ISR '" + i.name + "'");
    if (tasks_seen.count(i.name)) {
      throw ConfigError("'" + i.name + "' names both a task and an ISR");
    }
    if (i.source.empty()) throw ConfigError("ISR '" + i.name + "' has no source");
    if (!sources.insert(i.source).second) {
      throw ConfigError("source '" + i.source + "' bound to more than one ISR");
    }
    if (i.level == 0 || i.level > 15) {
      throw ConfigError("ISR '" + i.name + "': level must be in 1..15");
    }
    for (const auto& a : i.body) {
      const bool service = a.kind == ActionKind::kActivate || a.kind == ActionKind::kTerminate ||
                           a.kind == ActionKind::kDisableAll ||
                           a.kind == ActionKind::kEnableAll;
      if (i.category == IsrCategory::kIsr1 && service) {
        throw ConfigError("ISR1 '" + i.name + "' calls kernel service '" + to_string(a) + "'");
      }
      if (a.kind == ActionKind::kLoop) {
        throw ConfigError("ISR '" + i.name + "' body may not loop");
      }
    }
  }
  auto check_targets = [&](const std::string& owner, const std::vector<Action>& body) {
    for (const auto& a : body) {
      if (a.kind == ActionKind::kActivate && !tasks_seen.count(a.target)) {
        throw ConfigError(owner + " activates unknown task '" + a.target + "'");
      }
      if (a.kind == ActionKind::kTrigger && a.target.empty()) {
        throw ConfigError(owner + " triggers an unnamed source");
      }
    }
  };
  for (const auto& t : tasks) check_targets("task '" + t.name + "'", t.body);
  for (const auto& i : isrs) check_targets("ISR '" + i.name + "'", i.body);
}

std::map<std::string, std::uint8_t> KernelConfig::level_array() const {
  std::map<std::string, std::uint8_t> out;
  for (const auto& i : isrs) out[i.source] = i.level;
  return out;
}

Isr2Dispatch KernelConfig::dispatch_of(const IsrConfig& isr) const {
  if (isr.dispatch) return *isr.dispatch;
  return isr2_optimized ? Isr2Dispatch::kDirectCall : Isr2Dispatch::kAsTask;
}

}  // namespace ampsim
