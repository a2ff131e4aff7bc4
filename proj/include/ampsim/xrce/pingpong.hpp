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
#include <memory>
#include <optional>
#include <vector>

#include "ampsim/fabric/common.hpp"
#include "ampsim/hart/cost_model.hpp"
#include "ampsim/rtos/machine.hpp"
#include "ampsim/sim/engine.hpp"
#include "ampsim/xrce/bus.hpp"
#include "ampsim/xrce/executor.hpp"
#include "ampsim/xrce/session.hpp"
#include "ampsim/xrce/transport.hpp"

namespace ampsim::xrce {

struct PingPongConfig {
  std::uint64_t spin_period_us = 1'000;  // 0: event-driven client
  std::uint64_t hop_us = 50;             // fixed GPOS cost per hop
  std::uint64_t hop_jitter_us = 25;      // uniform extra per hop
  std::uint64_t wakeup_jitter_us = 0;    // uniform delay of each timer wakeup
  std::uint64_t timeout_ms = 100;
  std::size_t ring_slots = 16;
  std::size_t slot_size = 128;
  std::size_t payload_bytes = 32;
  std::size_t rounds = 1'000;
  Cycles spin_cost = 400;      // executor work per wakeup
  Cycles doorbell_cost = 20;   // doorbell ISR body
  ControllerMode mode = ControllerMode::kClic;
  CostModel costs;

  bool operator==(const PingPongConfig&) const = default;
};

struct PingPongResult {
  std::vector<Cycles> rtt;  // one per completed round
  std::size_t lost = 0;
  std::uint64_t doorbells = 0;  // after session setup
  std::uint64_t wakeups = 0;
  std::uint64_t freq_hz = kDefaultFreqHz;

  double min_ms() const;
  double avg_ms() const;
  double max_ms() const;
};

// GPOS ping publisher and pong subscriber, agent, shared rings, and an
// RTOS echo client driven by a timer-activated executor task. The GPOS side
// is event-driven; each GPOS hop costs hop_us plus jitter.
//
// Trace records (src "xrce"): ping_publish, agent_forward, doorbell, spin,
// echo, flush, agent_publish, pong_deliver, lost.
class PingPong {
 public:
  // Throws std::invalid_argument for an unusable configuration.
  PingPong(Engine& engine, PingPongConfig config);
  ~PingPong();
  PingPong(const PingPong&) = delete;
  PingPong& operator=(const PingPong&) = delete;

  // Runs every round (or until `limit`) and returns the result.
  const PingPongResult& run(Cycles limit = ~Cycles{0} >> 2);

  const PingPongResult& result() const { return result_; }
  const Machine& machine() const { return *machine_; }
  const XrceAgent& agent() const { return *agent_; }
  const XrceClient& client() const { return *client_; }
  const RingTransport& transport() const { return transport_; }
  const Bus& bus() const { return bus_; }

 private:
  Cycles hop();
  void send_ping();
  void on_pong(const Bytes& payload);
  void on_tick(Machine& m);
  void on_spin(Machine& m);

  Engine& engine_;
  PingPongConfig cfg_;
  Cycles period_;
  Cycles timeout_;
  Bus bus_;
  RingTransport transport_;
  SpinExecutor executor_;
  std::unique_ptr<XrceAgent> agent_;
  std::unique_ptr<XrceClient> client_;
  std::unique_ptr<Machine> machine_;
  PingPongResult result_;
  std::size_t round_ = 0;  // rounds issued
  std::optional<std::uint32_t> outstanding_;
  Cycles sent_at_ = 0;
  EventHandle timeout_event_;
  Cycles next_tick_ = 0;
  bool done_ = false;
  std::uint64_t handshake_doorbells_ = 0;
};

// Runs one ping-pong experiment on a fresh engine.
PingPongResult run_pingpong(const PingPongConfig& config, std::uint64_t seed, bool trace = false);

}  // namespace ampsim::xrce
