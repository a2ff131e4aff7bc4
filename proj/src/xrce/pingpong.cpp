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

#include "ampsim/xrce/pingpong.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ampsim::xrce {
namespace {

constexpr std::uint16_t kParticipant = 1;
constexpr std::uint16_t kPingTopic = 2;
constexpr std::uint16_t kPongTopic = 3;
constexpr std::uint16_t kSubscriber = 4;
constexpr std::uint16_t kPublisher = 5;
constexpr std::uint16_t kPingReader = 6;
constexpr std::uint16_t kPongWriter = 7;
constexpr std::uint32_t kClientKey = 0xC0FFEE01;
constexpr std::uint32_t kReady = 0xFFFFFFFF;

const char* const kUart = "uart";

Bytes make_payload(std::uint32_t round, std::size_t size) {
  Bytes out(std::max<std::size_t>(size, 4), 0);
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(round >> (8 * i));
  return out;
}

std::uint32_t round_of(const Bytes& p) {
  if (p.size() < 4) return kReady;
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{p[i]} << (8 * i);
  return v;
}

std::vector<EntitySpec> plan() {
  return {
      {kParticipant, {EntityKind::kParticipant, 0, 0, "rtos"}},
      {kPingTopic, {EntityKind::kTopic, kParticipant, 0, "ping"}},
      {kPongTopic, {EntityKind::kTopic, kParticipant, 0, "pong"}},
      {kSubscriber, {EntityKind::kSubscriber, kParticipant, 0, ""}},
      {kPublisher, {EntityKind::kPublisher, kParticipant, 0, ""}},
      {kPingReader, {EntityKind::kDataReader, kSubscriber, kPingTopic, ""}},
      {kPongWriter, {EntityKind::kDataWriter, kPublisher, kPongTopic, ""}},
  };
}

}  // namespace

double PingPongResult::min_ms() const {
  if (rtt.empty()) return 0.0;
  return static_cast<double>(*std::min_element(rtt.begin(), rtt.end())) * 1e3 /
         static_cast<double>(freq_hz);
}

double PingPongResult::max_ms() const {
  if (rtt.empty()) return 0.0;
  return static_cast<double>(*std::max_element(rtt.begin(), rtt.end())) * 1e3 /
         static_cast<double>(freq_hz);
}

double PingPongResult::avg_ms() const {
  if (rtt.empty()) return 0.0;
  const long double sum = std::accumulate(rtt.begin(), rtt.end(), 0.0L);
  return static_cast<double>(sum / rtt.size() * 1e3L / freq_hz);
}

PingPong::PingPong(Engine& engine, PingPongConfig config)
    : engine_(engine),
      cfg_(std::move(config)),
      period_(engine.clock().from_us(cfg_.spin_period_us)),
      timeout_(engine.clock().from_us(cfg_.timeout_ms * 1000)),
      transport_(cfg_.ring_slots, cfg_.slot_size),
      executor_(period_) {
  if (cfg_.rounds == 0) throw std::invalid_argument("ping-pong needs at least one round");
  if (cfg_.payload_bytes + kHeaderSize > cfg_.slot_size) {
    throw std::invalid_argument("payload does not fit a ring slot");
  }
  result_.freq_hz = engine.clock().freq_hz();
  engine_.jitter().configure("gpos_hop", {0, engine.clock().from_us(cfg_.hop_jitter_us)});
  engine_.jitter().configure("wakeup", {0, engine.clock().from_us(cfg_.wakeup_jitter_us)});

  // Subscribed ahead of the agent's reader so the record precedes the
  // doorbell it causes.
  bus_.subscribe("ping", [this](const Bytes& payload) {
    engine_.record("xrce", "agent_forward", {{"round", round_of(payload)}});
  });
  agent_ = std::make_unique<XrceAgent>(
      bus_, [this](const Bytes& f) { return transport_.send_to_client(f) == PushResult::kOk; });
  client_ = std::make_unique<XrceClient>(kClientKey, transport_);
  establish(*client_, *agent_, transport_, plan());
  handshake_doorbells_ = transport_.doorbells();

  client_->on_data(kPingReader, [this](const Bytes& payload) {
    engine_.record("xrce", "echo", {{"round", round_of(payload)}});
    executor_.defer([this, payload] {
      engine_.record("xrce", "flush", {{"round", round_of(payload)}});
      client_->write(kPongWriter, payload);
    });
  });
  executor_.add_callback([this] { client_->poll(); });
  // Announces the client; the GPOS side starts pinging when it arrives.
  executor_.defer([this] { client_->write(kPongWriter, make_payload(kReady, 4)); });

  transport_.set_doorbell([this] {
    engine_.record("xrce", "doorbell", nlohmann::json::object());
    machine_->raise(kUart);
  });
  transport_.set_agent_notify([this] {
    engine_.schedule_silent(hop(), [this] { agent_->spin_some(transport_.to_agent()); });
  });
  bus_.subscribe("pong", [this](const Bytes& payload) {
    engine_.record("xrce", "agent_publish", {{"round", round_of(payload)}});
    engine_.schedule_silent(hop(), [this, payload] { on_pong(payload); });
  });

  KernelConfig k;
  TaskConfig exec;
  exec.name = "executor";
  exec.priority = 2;
  exec.max_activations = 2;
  exec.body = {Action::native_call("spin_some", cfg_.spin_cost, [this](Machine& m) { on_spin(m); }),
               Action::terminate()};
  k.tasks.push_back(exec);

  IsrConfig uart;
  uart.name = "uart_rx";
  uart.source = kUart;
  uart.level = 3;
  uart.body = {Action::native_call("mark_pending", cfg_.doorbell_cost,
                                   [this](Machine&) { executor_.mark_pending(); })};
  if (executor_.event_driven()) uart.body.push_back(Action::activate("executor"));
  k.isrs.push_back(uart);

  if (!executor_.event_driven()) {
    IsrConfig tick;
    tick.name = "tick";
    tick.source = kSourceMtip;
    tick.level = 2;
    tick.body = {Action::native_call("rearm", 10, [this](Machine& m) { on_tick(m); }),
                 Action::activate("executor")};
    k.isrs.push_back(tick);
  }

  RoutingConfig routing;
  SourceBinding b;
  b.name = kUart;
  b.plic_source = 1;
  b.clic_line = 16;
  b.trigger = Trigger::kEdge;
  b.shv = true;
  routing.sources.push_back(b);

  PlatformConfig platform;
  platform.name = "pingpong";
  platform.mode = cfg_.mode;
  platform.costs = cfg_.costs;
  machine_ = std::make_unique<Machine>(engine_, k, routing, platform);
}

PingPong::~PingPong() = default;

Cycles PingPong::hop() { return engine_.clock().from_us(cfg_.hop_us) + engine_.jitter().draw("gpos_hop"); }

void PingPong::on_tick(Machine& m) {
  if (done_) return;
  next_tick_ += period_;
  m.set_timer(next_tick_ + engine_.jitter().draw("wakeup"));
}

void PingPong::on_spin(Machine&) {
  engine_.record("xrce", "spin", {{"pending", executor_.pending()}});
  executor_.spin_some();
}

void PingPong::send_ping() {
  const auto round = static_cast<std::uint32_t>(round_++);
  outstanding_ = round;
  sent_at_ = engine_.now();
  engine_.record("xrce", "ping_publish", {{"round", round}});
  const Bytes payload = make_payload(round, cfg_.payload_bytes);
  engine_.schedule_silent(hop(), [this, payload] { bus_.publish("ping", payload); });
  timeout_event_ = engine_.schedule(timeout_, "xrce", "lost", {{"round", round}}, [this, round] {
    if (outstanding_ != round) return;
    outstanding_.reset();
    ++result_.lost;
    if (round_ < cfg_.rounds) {
      send_ping();
    } else {
      done_ = true;
    }
  });
}

void PingPong::on_pong(const Bytes& payload) {
  const std::uint32_t round = round_of(payload);
  if (round == kReady) {
    if (round_ == 0) send_ping();
    return;
  }
  if (outstanding_ != round) return;  // late reply to a timed-out round
  outstanding_.reset();
  engine_.cancel(timeout_event_);
  const Cycles rtt = engine_.now() - sent_at_;
  result_.rtt.push_back(rtt);
  engine_.record("xrce", "pong_deliver", {{"round", round}, {"rtt", rtt}});
  if (round_ < cfg_.rounds) {
    send_ping();
  } else {
    done_ = true;
  }
}

const PingPongResult& PingPong::run(Cycles limit) {
  if (machine_->state() == CpuState::kStopped) {
    machine_->start();
    if (executor_.event_driven()) {
      // Nothing periodic to carry the announcement out.
      executor_.spin_some();
    } else {
      next_tick_ = period_;
      machine_->set_timer(next_tick_ + engine_.jitter().draw("wakeup"));
    }
  }
  engine_.run_idle(limit);
  machine_->settle();
  result_.doorbells = transport_.doorbells() - handshake_doorbells_;
  result_.wakeups = executor_.wakeups();
  return result_;
}

PingPongResult run_pingpong(const PingPongConfig& config, std::uint64_t seed, bool trace) {
  Engine engine(EngineOptions{kDefaultFreqHz, seed, 10'000});
  engine.trace().set_enabled(trace);
  PingPong pp(engine, config);
  return pp.run();
}

}  // namespace ampsim::xrce
