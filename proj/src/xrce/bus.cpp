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

#include "ampsim/xrce/bus.hpp"

namespace ampsim::xrce {

std::size_t Bus::subscribe(const std::string& topic, Callback fn) {
  const std::size_t id = next_id_++;
  topics_[topic].push_back(Sub{id, std::move(fn)});
  return id;
}

void Bus::publish(const std::string& topic, const Bytes& payload) {
  const std::uint64_t seq = published_++;
  auto it = topics_.find(topic);
  if (it == topics_.end()) return;
  // Subscribing from inside a callback must not invalidate the walk.
  const std::size_t n = it->second.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Sub s = it->second[i];
    log_.push_back(Delivery{topic, s.id, seq});
    s.fn(payload);
  }
}

}  // namespace ampsim::xrce
