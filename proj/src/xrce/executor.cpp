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

#include "ampsim/xrce/executor.hpp"

namespace ampsim::xrce {

std::size_t SpinExecutor::flush() {
  auto out = std::move(deferred_);
  deferred_.clear();
  for (auto& fn : out) fn();
  return out.size();
}

std::size_t SpinExecutor::spin_some() {
  ++wakeups_;
  std::size_t n = flush();
  if (pending_) {
    pending_ = false;
    for (auto& fn : callbacks_) fn();
  }
  if (event_driven()) n += flush();
  return n;
}

Cycles SpinExecutor::next_wakeup(Cycles now) const {
  if (period_ == 0) return now;
  return (now / period_ + 1) * period_;
}

}  // namespace ampsim::xrce
