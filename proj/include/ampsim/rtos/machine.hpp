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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ampsim/fabric/fabric.hpp"
#include "ampsim/hart/hart.hpp"
#include "ampsim/rtos/config.hpp"
#include "ampsim/rtos/scheduler.hpp"
#include "ampsim/sim/engine.hpp"

namespace ampsim {

// Runtime model error: spurious or unconfigured interrupt, broken pairing.
class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OsErrorRecord {
  Cycles cycle = 0;
  OsStatus status = OsStatus::kOk;
  std::string context;
  std::string service;
};

// One script action fetched for execution.
struct ExecRecord {
  std::string context;
  std::size_t pc = 0;

  bool operator==(const ExecRecord&) const = default;
};

enum class CpuState : std::uint8_t { kStopped, kBusy, kComputing, kIdle };

// Single-hart RTOS model. Scripts run on the hart; every kernel path is a
// sequence of charged primitives laid out on the engine's timeline.
// Interrupts are polled between primitives and preempt Compute actions and
// the idle loop.
//
// Trace records (src "hart") carry the primitive name and {"cycles"}. The
// kernel adds task_start, task_resume, isr_start, isr_resume, idle_resume,
// tail_chain, reschedule, probe and os_error; devices add irq_raise.
class Machine {
 public:
  Machine(Engine& engine, KernelConfig kernel, RoutingConfig routing, PlatformConfig platform);
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  // Activates autostart tasks and starts the hart at the current cycle.
  void start();

  // Device side. Pulses or drives the named source and re-polls the hart.
  void raise(const std::string& source);
  void set_line(const std::string& source, bool level);
  // Arms the CLINT timer; mtip rises at `at`.
  void set_timer(Cycles at);

  // Charges idle time up to now so mcycle covers the whole run.
  void settle();

  Engine& engine() { return engine_; }
  const KernelConfig& kernel() const { return kernel_; }
  const PlatformConfig& platform() const { return platform_; }
  const Hart& hart() const { return hart_; }
  const InterruptFabric& fabric() const { return fabric_; }
  InterruptFabric& fabric() { return fabric_; }
  const Scheduler& scheduler() const { return scheduler_; }
  CpuState state() const { return state_; }
  std::size_t isr_depth() const { return frames_.size(); }
  const std::vector<ExecRecord>& executed() const { return executed_; }
  const std::vector<OsErrorRecord>& os_errors() const { return os_errors_; }
  std::uint64_t interrupts_taken() const { return interrupts_taken_; }
  std::uint64_t tail_chains() const { return tail_chains_; }
  // Sum of charged cycles per primitive, from the hart counters.
  Cycles total_charged() const;
  // No script context left to run and no ISR in progress.
  bool quiescent() const;
  // Per-task run-to-completion bookkeeping.
  std::uint64_t task_starts(const std::string& task) const;

 private:
  struct MicroOp {
    std::optional<Primitive> prim;  // unset: zero-cost marker
    Cycles cycles = 0;
    std::function<void()> effect;
    bool precharged = false;
  };

  struct TaskRt {
    std::size_t pc = 0;
    Cycles remaining = 0;
    bool saved = false;
    bool disabled = false;
    bool saved_mie = true;
    std::uint8_t saved_thresh = 0;
    std::uint64_t starts = 0;
  };

  struct IsrFrame {
    std::size_t isr = 0;
    std::size_t pc = 0;
    Cycles remaining = 0;
    std::uint32_t plic_src = 0;
    std::uint32_t prev_threshold = 0;
    bool disabled = false;
    bool saved_mie = false;
    std::uint8_t saved_thresh = 0;
    bool chained_isr2 = false;  // an ISR2 ran earlier in this tail chain
  };

  // The context currently executing script actions.
  struct Ctx {
    std::string name;
    const std::vector<Action>* body = nullptr;
    std::size_t* pc = nullptr;
    Cycles* remaining = nullptr;
    bool* disabled = nullptr;
    bool* saved_mie = nullptr;
    std::uint8_t* saved_thresh = nullptr;
    bool is_task = false;
  };

  void advance();
  void schedule_advance(Cycles delay);
  bool run_op();
  bool try_take_interrupt();
  bool fetch_and_execute();
  std::optional<Ctx> context();
  std::optional<TrapCause> deliverable();
  void on_lines_changed();
  void preempt_cpu();

  void push(Primitive prim, Cycles cycles, std::function<void()> effect = {},
            bool precharged = false);
  void mark(std::function<void()> effect);

  void begin_trap(const TrapCause& cause);
  void begin_isr();
  void end_isr();
  void finish_isr_exit();
  void dispatch_next();
  void resume_interrupted();

  void svc_activate(const Ctx& ctx, const std::string& target);
  void svc_terminate(const Ctx& ctx);
  void svc_disable_all(const Ctx& ctx);
  void svc_enable_all(const Ctx& ctx);
  void crit_enter();
  void crit_exit();
  void os_error(const Ctx& ctx, const char* service, OsStatus status);
  void start_compute(Cycles cycles);

  std::size_t isr_for_source(const std::string& source) const;
  std::string source_for_cause(const TrapCause& cause, std::uint32_t* plic_src);
  std::uint8_t emulated_level() const;
  const IsrConfig& isr_config(const IsrFrame& f) const { return kernel_.isrs[f.isr]; }
  void record(const char* src, const char* event, nlohmann::json data);

  Engine& engine_;
  KernelConfig kernel_;
  PlatformConfig platform_;
  InterruptFabric fabric_;
  Hart hart_;
  Scheduler scheduler_;
  std::map<std::string, std::size_t> isr_by_source_;
  std::map<std::uint32_t, std::string> source_by_plic_;

  CpuState state_ = CpuState::kStopped;
  std::deque<MicroOp> ops_;
  std::vector<TaskRt> tasks_;
  std::vector<IsrFrame> frames_;
  bool idle_saved_ = false;
  Cycles idle_since_ = 0;
  Cycles compute_start_ = 0;
  Cycles compute_len_ = 0;
  EventHandle compute_event_;
  bool advance_pending_ = false;
  bool crit_saved_mie_ = true;
  std::uint8_t crit_saved_thresh_ = 0;

  std::vector<ExecRecord> executed_;
  std::vector<OsErrorRecord> os_errors_;
  std::uint64_t interrupts_taken_ = 0;
  std::uint64_t tail_chains_ = 0;
};

}  // namespace ampsim
