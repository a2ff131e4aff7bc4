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

#include "ampsim/rtos/scheduler.hpp"

namespace ampsim {

const char* to_string(TaskState state) {
  switch (state) {
    case TaskState::kSuspended: return "SUSPENDED";
    case TaskState::kReady: return "READY";
    case TaskState::kRunning: return "RUNNING";
  }
  return "?";
}

Scheduler::Scheduler(const std::vector<TaskConfig>& tasks) {
  tcbs_.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    TaskControlBlock t;
    t.id = i;
    t.name = tasks[i].name;
    t.priority = tasks[i].priority;
    t.max_activations = tasks[i].max_activations;
    tcbs_.push_back(std::move(t));
  }
}

std::optional<std::size_t> Scheduler::find(const std::string& name) const {
  for (const auto& t : tcbs_) {
    if (t.name == name) return t.id;
  }
  return std::nullopt;
}

OsStatus Scheduler::activate(std::size_t id) {
  TaskControlBlock& t = tcbs_.at(id);
  if (t.activations >= t.max_activations) return OsStatus::kLimit;
  ++t.activations;
  if (t.state == TaskState::kSuspended) {
    t.state = TaskState::kReady;
    ready_[t.priority].push_back(id);
  }
  return OsStatus::kOk;
}

std::optional<std::uint32_t> Scheduler::top_ready_priority() const {
  if (ready_.empty()) return std::nullopt;
  return ready_.begin()->first;
}

bool Scheduler::should_preempt() const {
  const auto top = top_ready_priority();
  if (!top) return false;
  if (!current_) return true;
  return *top > tcbs_[*current_].priority;
}

void Scheduler::preempt_current() {
  if (!current_) return;
  TaskControlBlock& t = tcbs_[*current_];
  t.state = TaskState::kReady;
  ready_[t.priority].push_front(t.id);
  current_.reset();
}

std::optional<std::size_t> Scheduler::dispatch_next() {
  if (ready_.empty()) return std::nullopt;
  auto it = ready_.begin();
  const std::size_t id = it->second.front();
  it->second.pop_front();
  if (it->second.empty()) ready_.erase(it);
  tcbs_[id].state = TaskState::kRunning;
  current_ = id;
  return id;
}

void Scheduler::terminate_current() {
  if (!current_) return;
  TaskControlBlock& t = tcbs_[*current_];
  current_.reset();
  if (t.activations > 0) --t.activations;
  if (t.activations > 0) {
    t.state = TaskState::kReady;
    ready_[t.priority].push_back(t.id);
  } else {
    t.state = TaskState::kSuspended;
  }
}

std::vector<std::size_t> Scheduler::ready_order() const {
  std::vector<std::size_t> out;
  for (const auto& [prio, q] : ready_) out.insert(out.end(), q.begin(), q.end());
  return out;
}

bool Scheduler::invariant_holds() const {
  if (!current_) return true;
  const auto top = top_ready_priority();
  return !top || *top <= tcbs_[*current_].priority;
}

}  // namespace ampsim
