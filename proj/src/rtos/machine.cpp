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

#include "ampsim/rtos/machine.hpp"

#include <algorithm>
#include <utility>

namespace ampsim {

namespace {

RoutingConfig with_mode(RoutingConfig routing, ControllerMode mode) {
  routing.mode = mode;
  return routing;
}

KernelConfig with_flavor(KernelConfig kernel, bool isr2_optimized) {
  kernel.isr2_optimized = isr2_optimized;
  kernel.validate();
  return kernel;
}

}  // namespace

Machine::Machine(Engine& engine, KernelConfig kernel, RoutingConfig routing,
                 PlatformConfig platform)
    : engine_(engine),
      kernel_(with_flavor(std::move(kernel), platform.isr2_optimized)),
      platform_(std::move(platform)),
      fabric_(with_mode(std::move(routing), platform_.mode)),
      hart_(platform_.mode, platform_.costs),
      scheduler_(kernel_.tasks),
      tasks_(kernel_.tasks.size()) {
  std::uint8_t meip_level = 0;
  for (std::size_t i = 0; i < kernel_.isrs.size(); ++i) {
    const IsrConfig& isr = kernel_.isrs[i];
    if (!fabric_.has_source(isr.source)) {
      throw ConfigError("ISR '" + isr.name + "' bound to unknown source '" + isr.source + "'");
    }
    isr_by_source_[isr.source] = i;
    const Wiring& w = fabric_.wiring();
    if (isr.source == kSourceMsip || isr.source == kSourceMtip) {
      if (w.mode == ControllerMode::kClic) {
        const std::uint32_t line = isr.source == kSourceMsip ? w.msip_line : w.mtip_line;
        fabric_.clic().set_ctl(line, Clic::make_ctl(isr.level, 0));
      }
      continue;
    }
    const SourceBinding* b = fabric_.binding(isr.source);
    const SourceRoute& r = w.routes.at(isr.source);
    // The emulated level array doubles as the PLIC priority.
    if (b->plic_source) fabric_.plic().set_priority(*b->plic_source, isr.level);
    if (r.route == Route::kClicLine) {
      fabric_.clic().set_ctl(r.id, Clic::make_ctl(isr.level, b->clic_priority));
    } else {
      meip_level = std::max(meip_level, isr.level);
    }
  }
  for (const auto& [src, name] : fabric_.wiring().plic_owner) source_by_plic_[src] = name;
  if (fabric_.mode() == ControllerMode::kClic && meip_level > 0) {
    fabric_.clic().set_ctl(fabric_.wiring().meip_line, Clic::make_ctl(meip_level, 0));
  }
  for (const auto& t : kernel_.tasks) {
    if (t.priority == 0) throw ConfigError("task '" + t.name + "': priority must be >= 1");
  }
}

void Machine::record(const char* src, const char* event, nlohmann::json data) {
  if (engine_.trace().enabled()) engine_.record(src, event, std::move(data));
}

void Machine::push(Primitive prim, Cycles cycles, std::function<void()> effect,
                   bool precharged) {
  ops_.push_back(MicroOp{prim, cycles, std::move(effect), precharged});
}

void Machine::mark(std::function<void()> effect) {
  ops_.push_back(MicroOp{std::nullopt, 0, std::move(effect), false});
}

void Machine::start() {
  if (state_ != CpuState::kStopped) throw KernelError("machine already started");
  for (std::size_t i = 0; i < kernel_.tasks.size(); ++i) {
    if (kernel_.tasks[i].autostart) scheduler_.activate(i);
  }
  state_ = CpuState::kBusy;
  dispatch_next();
  schedule_advance(0);
}

void Machine::schedule_advance(Cycles delay) {
  advance_pending_ = true;
  engine_.schedule_silent(delay, [this] {
    advance_pending_ = false;
    advance();
  });
}

// --- main loop ------------------------------------------------------------

void Machine::advance() {
  state_ = CpuState::kBusy;
  for (;;) {
    if (!ops_.empty()) {
      MicroOp op = std::move(ops_.front());
      ops_.pop_front();
      if (op.effect) op.effect();
      if (op.prim) {
        if (!op.precharged) hart_.charge(*op.prim, op.cycles);
        record("hart", to_string(*op.prim).data(), {{"cycles", op.cycles}});
      }
      if (op.cycles > 0) {
        schedule_advance(op.cycles);
        return;
      }
      continue;
    }
    if (try_take_interrupt()) continue;
    if (!fetch_and_execute()) return;
  }
}

std::optional<TrapCause> Machine::deliverable() {
  fabric_.sync();
  if (fabric_.mode() == ControllerMode::kClintPlic) {
    hart_.set_wires(fabric_.mtip_wire(), fabric_.msip_wire(), fabric_.meip_wire());
    return hart_.pending_cause();
  }
  Clic& clic = fabric_.clic();
  const bool changed = clic.refresh_handshake(hart_.running_level(), hart_.mintthresh());
  const IrqHandshake& hs = clic.handshake();
  if (changed && hs.req) record("clic", "clic_req", {{"line", hs.id}});
  if (!hs.req || !hart_.mie()) return std::nullopt;
  return TrapCause{hs.id, hs.level, hs.shv, fabric_.is_meip_line(hs.id)};
}

bool Machine::try_take_interrupt() {
  const auto cause = deliverable();
  if (!cause) return false;
  begin_trap(*cause);
  return true;
}

void Machine::on_lines_changed() {
  if (state_ != CpuState::kComputing && state_ != CpuState::kIdle) return;
  if (!deliverable()) return;
  preempt_cpu();
  advance();
}

void Machine::preempt_cpu() {
  const Cycles now = engine_.now();
  if (state_ == CpuState::kComputing) {
    engine_.cancel(compute_event_);
    const Cycles done = now - compute_start_;
    if (done > 0) {
      hart_.charge(Primitive::kCompute, done);
      record("hart", "compute", {{"cycles", done}});
    }
    if (auto ctx = context()) *ctx->remaining = compute_len_ - done;
  } else if (state_ == CpuState::kIdle) {
    if (now > idle_since_) {
      hart_.charge(Primitive::kIdle, now - idle_since_);
      record("hart", "idle", {{"cycles", now - idle_since_}});
    }
  }
  state_ = CpuState::kBusy;
}

void Machine::settle() {
  if (state_ == CpuState::kIdle && engine_.now() > idle_since_) {
    hart_.charge(Primitive::kIdle, engine_.now() - idle_since_);
    record("hart", "idle", {{"cycles", engine_.now() - idle_since_}});
    idle_since_ = engine_.now();
  }
}

std::optional<Machine::Ctx> Machine::context() {
  if (!frames_.empty()) {
    IsrFrame& f = frames_.back();
    const IsrConfig& isr = kernel_.isrs[f.isr];
    return Ctx{isr.name, &isr.body, &f.pc, &f.remaining, &f.disabled, &f.saved_mie,
               &f.saved_thresh, false};
  }
  if (auto cur = scheduler_.current()) {
    TaskRt& t = tasks_[*cur];
    const TaskConfig& cfg = kernel_.tasks[*cur];
    return Ctx{cfg.name, &cfg.body, &t.pc, &t.remaining, &t.disabled, &t.saved_mie,
               &t.saved_thresh, true};
  }
  return std::nullopt;
}

void Machine::start_compute(Cycles cycles) {
  state_ = CpuState::kComputing;
  compute_start_ = engine_.now();
  compute_len_ = cycles;
  compute_event_ = engine_.schedule_silent(cycles, [this] {
    hart_.charge(Primitive::kCompute, compute_len_);
    record("hart", "compute", {{"cycles", compute_len_}});
    if (auto ctx = context()) *ctx->remaining = 0;
    advance();
  });
}

bool Machine::fetch_and_execute() {
  auto ctx = context();
  if (!ctx) {
    state_ = CpuState::kIdle;
    idle_since_ = engine_.now();
    return false;
  }
  if (*ctx->remaining > 0) {
    start_compute(*ctx->remaining);
    return false;
  }
  const auto& body = *ctx->body;
  if (*ctx->pc >= body.size()) {
    if (ctx->is_task) {
      svc_terminate(*ctx);
    } else {
      end_isr();
    }
    return true;
  }
  const std::size_t pc = (*ctx->pc)++;
  const Action& a = body[pc];
  executed_.push_back(ExecRecord{ctx->name, pc});
  switch (a.kind) {
    case ActionKind::kCompute:
      if (a.cycles == 0) return true;
      start_compute(a.cycles);
      return false;
    case ActionKind::kProbe:
      record("kernel", "probe", {{"name", a.target}, {"context", ctx->name}});
      return true;
    case ActionKind::kActivate:
      svc_activate(*ctx, a.target);
      return true;
    case ActionKind::kTerminate:
      svc_terminate(*ctx);
      return true;
    case ActionKind::kDisableAll:
      svc_disable_all(*ctx);
      return true;
    case ActionKind::kEnableAll:
      svc_enable_all(*ctx);
      return true;
    case ActionKind::kTrigger: {
      const std::string source = a.target;
      push(Primitive::kCompute, 1, [this, source] { raise(source); });
      return true;
    }
    case ActionKind::kLoop:
      *ctx->pc = 0;
      return true;
    case ActionKind::kNative: {
      const auto fn = a.native;
      push(Primitive::kCompute, a.cycles, [this, fn] {
        if (fn) fn(*this);
      });
      return true;
    }
  }
  return true;
}

// --- devices ----------------------------------------------------------------

void Machine::raise(const std::string& source) {
  record("dev", "irq_raise", {{"name", source}});
  fabric_.pulse_source(source);
  on_lines_changed();
}

void Machine::set_line(const std::string& source, bool level) {
  record("dev", level ? "irq_raise" : "irq_lower", {{"name", source}});
  fabric_.set_source(source, level);
  on_lines_changed();
}

void Machine::set_timer(Cycles at) {
  fabric_.clint().set_mtimecmp(0, at);
  const Cycles delay = at > engine_.now() ? at - engine_.now() : 0;
  engine_.schedule(delay, "dev", "timer", {{"name", kSourceMtip}}, [this] {
    fabric_.clint().tick(engine_.now());
    fabric_.sync();
    on_lines_changed();
  });
}

// --- trap path --------------------------------------------------------------

std::size_t Machine::isr_for_source(const std::string& source) const {
  auto it = isr_by_source_.find(source);
  if (it == isr_by_source_.end()) {
    throw KernelError("spurious interrupt: no ISR configured for source '" + source + "'");
  }
  return it->second;
}

std::string Machine::source_for_cause(const TrapCause& cause, std::uint32_t* plic_src) {
  *plic_src = 0;
  if (cause.via_plic) {
    const std::uint32_t src = fabric_.plic().claim(0);
    if (src == 0) throw KernelError("spurious external interrupt: PLIC claim returned 0");
    *plic_src = src;
    auto it = source_by_plic_.find(src);
    if (it == source_by_plic_.end()) {
      throw KernelError("PLIC source " + std::to_string(src) + " has no binding");
    }
    return it->second;
  }
  if (fabric_.mode() == ControllerMode::kClintPlic) {
    return cause.id == cause::kMachineSoftware ? kSourceMsip : kSourceMtip;
  }
  const auto& owners = fabric_.wiring().clic_owner;
  auto it = owners.find(cause.id);
  if (it == owners.end()) {
    throw KernelError("spurious interrupt on unowned CLIC line " + std::to_string(cause.id));
  }
  return it->second;
}

void Machine::begin_trap(const TrapCause& cause_in) {
  TrapCause cause = cause_in;
  if (fabric_.mode() == ControllerMode::kClic) {
    const ClicWinner w = fabric_.clic().ack();
    record("clic", "clic_ack", {{"line", w.id}});
    cause = TrapCause{w.id, w.level, w.shv, fabric_.is_meip_line(w.id)};
    hart_.accept(w, cause.via_plic);
  }
  ++interrupts_taken_;
  const DispatchPlan plan = hart_.take_trap(cause);
  std::uint32_t plic_src = 0;
  const std::string source = source_for_cause(cause, &plic_src);
  IsrFrame frame;
  frame.isr = isr_for_source(source);
  frame.plic_src = plic_src;
  frames_.push_back(frame);
  for (const Charge& c : plan.charges) push(c.prim, c.cycles, {}, true);
  push(Primitive::kContextSave, hart_.costs().context_save());
  begin_isr();
}

void Machine::begin_isr() {
  IsrFrame& f = frames_.back();
  const IsrConfig& isr = isr_config(f);
  // The handler's first store acknowledges CLINT sources.
  if (isr.source == kSourceMsip) fabric_.clint().set_msip(0, false);
  if (isr.source == kSourceMtip) fabric_.clint().set_mtimecmp(0, ~Cycles{0});
  fabric_.sync();
  if (isr.category == IsrCategory::kIsr2) {
    const CostModel& c = hart_.costs();
    push(Primitive::kKernelOp, c.kernel_op_base);
    const std::size_t depth = frames_.size();
    push(Primitive::kCsrAccess, c.csr_access, [this, depth] {
      IsrFrame& fr = frames_[depth - 1];
      if (fabric_.mode() == ControllerMode::kClintPlic) {
        fr.prev_threshold = fabric_.plic().threshold(0);
        fabric_.plic().set_threshold(0, isr_config(fr).level);
      } else {
        hart_.set_mie(true);
      }
    });
    if (kernel_.dispatch_of(isr) == Isr2Dispatch::kAsTask) {
      push(Primitive::kKernelOp, c.kernel_op_base);
      push(Primitive::kQueueOp, c.queue_op);
      push(Primitive::kQueueOp, c.queue_op);
    }
  }
  const std::string name = isr.name;
  mark([this, name] { record("kernel", "isr_start", {{"name", name}}); });
}

void Machine::end_isr() {
  IsrFrame& f = frames_.back();
  const IsrConfig& isr = isr_config(f);
  const CostModel& c = hart_.costs();
  if (f.plic_src != 0) {
    const std::uint32_t src = f.plic_src;
    f.plic_src = 0;
    push(Primitive::kPlicComplete, c.plic_complete_access,
         [this, src] { fabric_.plic().complete(0, src); });
  }
  if (isr.category == IsrCategory::kIsr2 && fabric_.mode() == ControllerMode::kClintPlic) {
    const std::uint32_t prev = f.prev_threshold;
    push(Primitive::kCsrAccess, c.csr_access,
         [this, prev] { fabric_.plic().set_threshold(0, prev); });
  }
  if (fabric_.mode() == ControllerMode::kClic && platform_.mnxti) {
    push(Primitive::kCsrAccess, c.csr_access, [this] {
      fabric_.sync();
      const auto next = hart_.read_mnxti(fabric_.clic());
      if (!next) {
        finish_isr_exit();
        return;
      }
      ++tail_chains_;
      IsrFrame& fr = frames_.back();
      const bool chained_isr2 =
          fr.chained_isr2 || isr_config(fr).category == IsrCategory::kIsr2;
      const TrapCause cause{next->id, next->level, false, fabric_.is_meip_line(next->id)};
      std::uint32_t plic_src = 0;
      const std::string source = source_for_cause(cause, &plic_src);
      fr = IsrFrame{};
      fr.isr = isr_for_source(source);
      fr.plic_src = plic_src;
      fr.chained_isr2 = chained_isr2;
      // The chained handler starts masked like a fresh trap; ISR2 unmasks.
      hart_.set_mie(false);
      record("kernel", "tail_chain", {{"name", isr_config(fr).name}, {"line", next->id}});
      if (cause.via_plic) push(Primitive::kPlicClaim, hart_.costs().plic_claim_access);
      begin_isr();
    }, true);
    return;
  }
  finish_isr_exit();
}

void Machine::finish_isr_exit() {
  const IsrFrame& f = frames_.back();
  const bool isr2 = isr_config(f).category == IsrCategory::kIsr2 || f.chained_isr2;
  const CostModel& c = hart_.costs();
  auto trap_exit = [this] {
    frames_.pop_back();
    hart_.trap_return();
  };
  if (frames_.size() == 1 && isr2) {
    push(Primitive::kKernelOp, c.kernel_op_base, [this, trap_exit] {
      const bool sw = scheduler_.should_preempt();
      record("kernel", "reschedule", {{"switch", sw}});
      const CostModel& cm = hart_.costs();
      if (sw) {
        push(Primitive::kQueueOp, cm.queue_op, [this] {
          if (auto cur = scheduler_.current()) {
            tasks_[*cur].saved = true;
            scheduler_.preempt_current();
          } else {
            idle_saved_ = true;
          }
        });
        push(Primitive::kTrapExit, cm.trap_exit, trap_exit, true);
        mark([this] { dispatch_next(); });
      } else {
        push(Primitive::kContextRestore, cm.context_restore());
        push(Primitive::kTrapExit, cm.trap_exit, trap_exit, true);
        mark([this] { resume_interrupted(); });
      }
    });
    return;
  }
  push(Primitive::kContextRestore, c.context_restore());
  push(Primitive::kTrapExit, c.trap_exit, trap_exit, true);
  mark([this] { resume_interrupted(); });
}

void Machine::resume_interrupted() {
  if (!frames_.empty()) {
    record("kernel", "isr_resume", {{"name", isr_config(frames_.back()).name}});
  } else if (auto cur = scheduler_.current()) {
    tasks_[*cur].saved = false;
    record("kernel", "task_resume", {{"name", kernel_.tasks[*cur].name}});
  } else {
    idle_saved_ = false;
    record("kernel", "idle_resume", nlohmann::json::object());
  }
}

void Machine::dispatch_next() {
  const auto id = scheduler_.dispatch_next();
  if (!id) {
    if (idle_saved_) {
      push(Primitive::kContextRestore, hart_.costs().context_restore());
      mark([this] {
        idle_saved_ = false;
        record("kernel", "idle_resume", nlohmann::json::object());
      });
    }
    return;
  }
  TaskRt& t = tasks_[*id];
  const std::string name = kernel_.tasks[*id].name;
  if (t.saved) {
    push(Primitive::kContextRestore, hart_.costs().context_restore());
    const std::size_t tid = *id;
    mark([this, tid, name] {
      tasks_[tid].saved = false;
      record("kernel", "task_resume", {{"name", name}});
    });
    return;
  }
  const std::uint64_t starts = t.starts;
  t = TaskRt{};
  t.starts = starts + 1;
  record("kernel", "task_start", {{"name", name}});
}

// --- kernel services ----------------------------------------------------------

std::uint8_t Machine::emulated_level() const {
  return frames_.empty() ? 0 : isr_config(frames_.back()).level;
}

void Machine::crit_enter() {
  push(Primitive::kCsrAccess, hart_.costs().csr_access, [this] {
    if (fabric_.mode() == ControllerMode::kClintPlic) {
      crit_saved_mie_ = hart_.mie();
      hart_.set_mie(false);
    } else {
      crit_saved_thresh_ = hart_.mintthresh();
      hart_.set_mintthresh(kClicMaskAll);
    }
  });
}

void Machine::crit_exit() {
  const Cycles csr = hart_.costs().csr_access;
  if (fabric_.mode() == ControllerMode::kClintPlic) {
    // Re-apply the emulated level, then the global enable.
    push(Primitive::kCsrAccess, csr,
         [this] { fabric_.plic().set_threshold(0, emulated_level()); });
    push(Primitive::kCsrAccess, csr, [this] { hart_.set_mie(crit_saved_mie_); });
  } else {
    push(Primitive::kCsrAccess, csr, [this] { hart_.set_mintthresh(crit_saved_thresh_); });
  }
}

void Machine::os_error(const Ctx& ctx, const char* service, OsStatus status) {
  os_errors_.push_back(OsErrorRecord{engine_.now(), status, ctx.name, service});
  record("kernel", "os_error",
         {{"service", service}, {"status", to_string(status)}, {"context", ctx.name}});
}

void Machine::svc_activate(const Ctx& ctx, const std::string& target) {
  const CostModel& c = hart_.costs();
  push(Primitive::kKernelOp, c.kernel_op_base);
  if (*ctx.disabled) {
    os_error(ctx, "ActivateTask", OsStatus::kDisabledInt);
    return;
  }
  const std::size_t id = *scheduler_.find(target);
  const bool from_task = ctx.is_task;
  const Ctx caller = ctx;
  crit_enter();
  push(Primitive::kQueueOp, c.queue_op, [this, id, from_task, caller] {
    const OsStatus st = scheduler_.activate(id);
    if (st != OsStatus::kOk) os_error(caller, "ActivateTask", st);
    const CostModel& cm = hart_.costs();
    if (st == OsStatus::kOk && from_task && scheduler_.should_preempt()) {
      push(Primitive::kContextSave, cm.context_save(), [this] {
        tasks_[*scheduler_.current()].saved = true;
      });
      push(Primitive::kQueueOp, cm.queue_op, [this] { scheduler_.preempt_current(); });
      crit_exit();
      mark([this] { dispatch_next(); });
    } else {
      crit_exit();
    }
  });
}

void Machine::svc_terminate(const Ctx& ctx) {
  const CostModel& c = hart_.costs();
  push(Primitive::kKernelOp, c.kernel_op_base);
  if (!ctx.is_task) {
    os_error(ctx, "TerminateTask", OsStatus::kCallLevel);
    return;
  }
  if (*ctx.disabled) {
    os_error(ctx, "TerminateTask", OsStatus::kDisabledInt);
    return;
  }
  crit_enter();
  push(Primitive::kQueueOp, c.queue_op, [this] { scheduler_.terminate_current(); });
  push(Primitive::kQueueOp, c.queue_op);
  crit_exit();
  mark([this] { dispatch_next(); });
}

void Machine::svc_disable_all(const Ctx& ctx) {
  const CostModel& c = hart_.costs();
  if (*ctx.disabled) {
    push(Primitive::kKernelOp, c.kernel_op_base);
    os_error(ctx, "DisableAllInterrupts", OsStatus::kState);
    return;
  }
  *ctx.disabled = true;
  bool* saved_mie = ctx.saved_mie;
  std::uint8_t* saved_thresh = ctx.saved_thresh;
  push(Primitive::kCsrAccess, c.csr_access, [this, saved_mie, saved_thresh] {
    if (fabric_.mode() == ControllerMode::kClintPlic) {
      *saved_mie = hart_.mie();
      hart_.set_mie(false);
    } else {
      *saved_thresh = hart_.mintthresh();
      hart_.set_mintthresh(kClicMaskAll);
    }
  });
  push(Primitive::kKernelOp, c.kernel_op_base);
}

void Machine::svc_enable_all(const Ctx& ctx) {
  const CostModel& c = hart_.costs();
  push(Primitive::kKernelOp, c.kernel_op_base);
  if (!*ctx.disabled) {
    os_error(ctx, "EnableAllInterrupts", OsStatus::kNoFunc);
    return;
  }
  *ctx.disabled = false;
  const bool saved_mie = *ctx.saved_mie;
  const std::uint8_t saved_thresh = *ctx.saved_thresh;
  push(Primitive::kCsrAccess, c.csr_access, [this, saved_mie, saved_thresh] {
    if (fabric_.mode() == ControllerMode::kClintPlic) {
      hart_.set_mie(saved_mie);
    } else {
      hart_.set_mintthresh(saved_thresh);
    }
  });
}

// --- queries -----------------------------------------------------------------

Cycles Machine::total_charged() const {
  Cycles sum = 0;
  for (std::size_t i = 0; i < kPrimitiveCount; ++i) sum += hart_.charged(static_cast<Primitive>(i));
  return sum;
}

bool Machine::quiescent() const {
  return frames_.empty() && !scheduler_.current() && ops_.empty() &&
         state_ == CpuState::kIdle;
}

std::uint64_t Machine::task_starts(const std::string& task) const {
  const auto id = scheduler_.find(task);
  return id ? tasks_[*id].starts : 0;
}

}  // namespace ampsim
