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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ampsim/fabric/common.hpp"
#include "ampsim/hart/cost_model.hpp"

namespace ampsim {

class Machine;

// Invalid static kernel configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OsStatus : std::uint8_t {
  kOk,
  kLimit,        // too many activations
  kCallLevel,    // service not allowed from this context
  kDisabledInt,  // service called with interrupts disabled
  kState,        // nested DisableAllInterrupts
  kNoFunc,       // EnableAllInterrupts without a matching disable
};

const char* to_string(OsStatus status);

enum class ActionKind : std::uint8_t {
  kCompute,     // busy for N cycles, interruptible
  kProbe,       // zero-cost trace marker
  kActivate,    // ActivateTask(target)
  kTerminate,   // TerminateTask()
  kDisableAll,  // DisableAllInterrupts()
  kEnableAll,   // EnableAllInterrupts()
  kTrigger,     // store to a device register that raises `target`
  kLoop,        // jump back to the first action
  kNative,      // model hook: runs `native` then costs N cycles, atomic
};

struct Action {
  ActionKind kind = ActionKind::kCompute;
  Cycles cycles = 0;
  std::string target;
  std::function<void(Machine&)> native;

  static Action compute(Cycles n) { return {ActionKind::kCompute, n, {}, {}}; }
  static Action probe(std::string name) { return {ActionKind::kProbe, 0, std::move(name), {}}; }
  static Action activate(std::string task) {
    return {ActionKind::kActivate, 0, std::move(task), {}};
  }
  static Action terminate() { return {ActionKind::kTerminate, 0, {}, {}}; }
  static Action disable_all() { return {ActionKind::kDisableAll, 0, {}, {}}; }
  static Action enable_all() { return {ActionKind::kEnableAll, 0, {}, {}}; }
  static Action trigger(std::string source) {
    return {ActionKind::kTrigger, 0, std::move(source), {}};
  }
  static Action loop() { return {ActionKind::kLoop, 0, {}, {}}; }
  static Action native_call(std::string name, Cycles n, std::function<void(Machine&)> fn) {
    return {ActionKind::kNative, n, std::move(name), std::move(fn)};
  }
};

// "compute 40", "probe start", "activate high", "terminate", "disable_all",
// "enable_all", "trigger uart", "loop". Throws ConfigError otherwise.
Action parse_action(const std::string& text);
std::string to_string(const Action& action);

struct TaskConfig {
  std::string name;
  std::uint32_t priority = 1;  // higher is more urgent
  std::uint32_t max_activations = 1;
  bool autostart = false;
  std::vector<Action> body;
};

enum class IsrCategory : std::uint8_t { kIsr1, kIsr2 };
enum class Isr2Dispatch : std::uint8_t { kAsTask, kDirectCall };

const char* to_string(IsrCategory category);
const char* to_string(Isr2Dispatch dispatch);
IsrCategory parse_isr_category(const std::string& text);
Isr2Dispatch parse_isr2_dispatch(const std::string& text);

struct IsrConfig {
  std::string name;
  IsrCategory category = IsrCategory::kIsr2;
  std::string source;      // interrupt source name
  std::uint8_t level = 1;  // 1..15
  // Unset: follows KernelConfig::isr2_optimized.
  std::optional<Isr2Dispatch> dispatch;
  std::vector<Action> body;
};

struct KernelConfig {
  std::vector<TaskConfig> tasks;
  std::vector<IsrConfig> isrs;
  bool isr2_optimized = true;

  // Throws ConfigError on duplicate names, unknown activation targets,
  // kernel services inside an ISR1 body, or bad levels and priorities.
  void validate() const;
  // Emulated interrupt level per source, as generated by the OS tools.
  std::map<std::string, std::uint8_t> level_array() const;
  Isr2Dispatch dispatch_of(const IsrConfig& isr) const;
};

// One column of a comparison: controller, kernel flavor, costs.
struct PlatformConfig {
  std::string name = "default";
  ControllerMode mode = ControllerMode::kClintPlic;
  bool isr2_optimized = true;
  bool mnxti = true;  // kernel uses mnxti tail-chaining (CLIC only)
  CostModel costs;

  bool operator==(const PlatformConfig&) const = default;
};

}  // namespace ampsim
