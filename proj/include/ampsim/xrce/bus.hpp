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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ampsim/xrce/wire.hpp"

namespace ampsim::xrce {

// Local publish/subscribe bus standing in for the global data space.
class Bus {
 public:
  using Callback = std::function<void(const Bytes&)>;

  struct Delivery {
    std::string topic;
    std::size_t subscriber = 0;
    std::uint64_t publish_seq = 0;
  };

  // Returns the subscriber id.
  std::size_t subscribe(const std::string& topic, Callback fn);
  // Synchronous fan-out in subscription order.
  void publish(const std::string& topic, const Bytes& payload);

  const std::vector<Delivery>& deliveries() const { return log_; }
  std::uint64_t published() const { return published_; }

 private:
  struct Sub {
    std::size_t id;
    Callback fn;
  };
  std::map<std::string, std::vector<Sub>> topics_;
  std::vector<Delivery> log_;
  std::size_t next_id_ = 0;
  std::uint64_t published_ = 0;
};

}  // namespace ampsim::xrce
