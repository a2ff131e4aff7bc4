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
#include <string>
#include <vector>

#include "ampsim/rtos/config.hpp"

namespace ampsim {

enum class TaskState : std::uint8_t { kSuspended, kReady, kRunning };

const char* to_string(TaskState state);

struct TaskControlBlock {
  std::size_t id = 0;
  std::string name;
  std::uint32_t priority = 0;
  std::uint32_t max_activations = 1;
  // Outstanding activations, the running instance included.
  std::uint32_t activations = 0;
  TaskState state = TaskState::kSuspended;
};

// Fixed-priority ready queue. Equal priorities run in activation order; a
// preempted task goes back to the head of its priority level.
class Scheduler {
 public:
  explicit Scheduler(const std::vector<TaskConfig>& tasks);

  std::size_t size() const { return tcbs_.size(); }
  const TaskControlBlock& tcb(std::size_t id) const { return tcbs_.at(id); }
  std::optional<std::size_t> find(const std::string& name) const;
  std::optional<std::size_t> current() const { return current_; }

  // SUSPENDED -> READY, or one more queued activation. kLimit on overflow.
  OsStatus activate(std::size_t id);
  // Priority of the best READY task.
  std::optional<std::uint32_t> top_ready_priority() const;
  // A READY task outranks the running one (or nothing runs).
  bool should_preempt() const;
  // RUNNING -> READY at the head of its priority.
  void preempt_current();
  // Pops the best READY task and makes it RUNNING.
  std::optional<std::size_t> dispatch_next();
  // RUNNING -> SUSPENDED, or back to READY while activations remain.
  void terminate_current();

  std::vector<std::size_t> ready_order() const;
  // RUNNING priority >= every READY priority.
  bool invariant_holds() const;

 private:
  std::vector<TaskControlBlock> tcbs_;
  std::map<std::uint32_t, std::deque<std::size_t>, std::greater<>> ready_;
  std::optional<std::size_t> current_;
};

}  // namespace ampsim
