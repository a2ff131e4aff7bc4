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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ampsim/xrce/bus.hpp"
#include "ampsim/xrce/executor.hpp"
#include "ampsim/xrce/pingpong.hpp"
#include "ampsim/xrce/session.hpp"
#include "ampsim/xrce/stream.hpp"
#include "ampsim/xrce/transport.hpp"
#include "ampsim/xrce/wire.hpp"

namespace ampsim::xrce {
namespace {

TEST(Wire, HeaderIsLittleEndian) {
  const Message m{MessageType::kWriteData, 0x04030201, 1, 0x0605, 0x0807, {0xAA, 0xBB}};
  const Bytes want{4, 0x01, 0x02, 0x03, 0x04, 1, 0x05, 0x06, 0x07, 0x08, 2, 0, 0xAA, 0xBB};
  EXPECT_EQ(encode(m), want);
  EXPECT_EQ(decode(want), m);
  EXPECT_EQ(frame_size(want), want.size());
}

TEST(Wire, MalformedFramesThrow) {
  Bytes f = encode(Message{MessageType::kData, 1, 1, 1, 1, {1, 2, 3}});
  EXPECT_THROW(decode(std::span(f).first(5)), XrceError);
  EXPECT_THROW(decode(std::span(f).first(f.size() - 1)), XrceError);
  f[0] = 99;
  EXPECT_THROW(decode(f), XrceError);
}

TEST(Wire, CreateAndStatusPayloads) {
  const CreateRequest r{EntityKind::kDataWriter, 5, 2, "w"};
  EXPECT_EQ(decode_create(encode(r)), r);
  const Status s{MessageType::kCreate, 1, "unknown topic"};
  EXPECT_EQ(decode_status(encode(s)), s);
}

TEST(Bus, DeliversToTopicSubscribersInOrder) {
  Bus bus;
  std::vector<std::string> got;
  bus.subscribe("a", [&](const Bytes& p) { got.push_back("a1:" + to_text(p)); });
  bus.subscribe("b", [&](const Bytes& p) { got.push_back("b:" + to_text(p)); });
  bus.subscribe("a", [&](const Bytes& p) { got.push_back("a2:" + to_text(p)); });
  bus.publish("a", to_bytes("x"));
  bus.publish("a", to_bytes("y"));
  bus.publish("c", to_bytes("z"));
  EXPECT_EQ(got, (std::vector<std::string>{"a1:x", "a2:x", "a1:y", "a2:y"}));
  EXPECT_EQ(bus.deliveries().size(), 4u);
}

struct Pair {
  Bus bus;
  RingTransport t;
  XrceAgent agent;
  XrceClient client;

  explicit Pair(std::size_t slots = 16)
      : t(slots, 64),
        agent(bus, [this](const Bytes& f) { return t.send_to_client(f) == PushResult::kOk; }),
        client(7, t) {}
};

std::vector<EntitySpec> writer_plan() {
  return {{1, {EntityKind::kTopic, 0, 0, "ping"}},
          {2, {EntityKind::kDataWriter, 0, 1, ""}},
          {3, {EntityKind::kDataReader, 0, 1, ""}}};
}

TEST(Session, EmptyPlanConnects) {
  Pair p;
  establish(p.client, p.agent, p.t, {});
  EXPECT_EQ(p.client.state(), SessionState::kConnected);
  EXPECT_TRUE(p.client.entities().empty());
}

TEST(Session, TopicWriterReaderAcked) {
  Pair p;
  establish(p.client, p.agent, p.t, writer_plan());
  EXPECT_EQ(p.client.entities().size(), 3u);
  EXPECT_EQ(p.agent.entities().size(), 3u);
}

TEST(Session, WriterWithoutTopicRejected) {
  Pair p;
  EXPECT_THROW(establish(p.client, p.agent, p.t, {{2, {EntityKind::kDataWriter, 0, 9, ""}}}),
               XrceError);
  EXPECT_EQ(p.client.state(), SessionState::kDisconnected);
}

TEST(Session, DuplicateIdRejectedByClient) {
  Pair p;
  EXPECT_THROW(p.client.create_entities({{1, {EntityKind::kTopic, 0, 0, "a"}},
                                         {1, {EntityKind::kTopic, 0, 0, "b"}}}),
               XrceError);
}

TEST(Session, WriteReachesBusInOrder) {
  Pair p;
  establish(p.client, p.agent, p.t, writer_plan());
  std::vector<std::string> got;
  p.bus.subscribe("ping", [&](const Bytes& b) { got.push_back(to_text(b)); });
  p.client.write(2, to_bytes("one"));
  p.client.write(2, to_bytes("two"));
  EXPECT_EQ(p.agent.spin_some(p.t.to_agent()), 2u);
  EXPECT_EQ(got, (std::vector<std::string>{"one", "two"}));
  EXPECT_EQ(p.agent.spin_some(p.t.to_agent()), 0u);
  EXPECT_THROW(p.client.write(3, to_bytes("x")), XrceError);  // a reader
}

TEST(Session, RingCapacitySweep) {
  for (std::size_t k = 1; k <= 12; ++k) {
    // Setup traffic needs room for 3 frames (client + topic + writer).
    Pair p(std::max<std::size_t>(k, 3));
    establish(p.client, p.agent, p.t,
              {{1, {EntityKind::kTopic, 0, 0, "t"}}, {2, {EntityKind::kDataWriter, 0, 1, ""}}});
    const std::size_t cap = p.t.to_agent().slots();
    std::size_t delivered = 0;
    p.bus.subscribe("t", [&](const Bytes&) { ++delivered; });
    for (std::size_t i = 0; i < cap; ++i) p.client.write(2, to_bytes(std::to_string(i)));
    EXPECT_THROW(p.client.write(2, to_bytes("over")), BackpressureError);
    p.agent.spin_some(p.t.to_agent());
    EXPECT_EQ(delivered, cap);
    // The rejected write consumed no sequence number.
    p.client.write(2, to_bytes("after"));
    p.agent.spin_some(p.t.to_agent());
    EXPECT_EQ(delivered, cap + 1);
    EXPECT_EQ(p.agent.dropped(), 0u);
  }
}

TEST(Session, MalformedFrameDroppedSessionKept) {
  Pair p;
  establish(p.client, p.agent, p.t, writer_plan());
  const Bytes junk{4, 1, 2};
  p.t.send_to_agent(junk);
  std::size_t delivered = 0;
  p.bus.subscribe("ping", [&](const Bytes&) { ++delivered; });
  p.client.write(2, to_bytes("ok"));
  EXPECT_EQ(p.agent.spin_some(p.t.to_agent()), 2u);
  EXPECT_EQ(p.agent.dropped(), 1u);
  EXPECT_EQ(p.agent.log().size(), 1u);
  EXPECT_EQ(delivered, 1u);
}

// Oracle: a separate occupancy counter of the client-bound ring; a doorbell
// is due whenever a frame lands while the counter is zero.
TEST(Session, DoorbellOncePerBurstIntoEmptyRing) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Pair p(8);
    establish(p.client, p.agent, p.t, writer_plan());
    const std::uint64_t base = p.t.doorbells();
    std::uint64_t want = 0;
    std::size_t occupancy = 0;
    std::size_t published = 0;
    std::size_t received = 0;
    p.client.on_data(3, [&](const Bytes&) { ++received; });
    for (int op = 0; op < 200; ++op) {
      if (rng() % 3 == 0) {
        p.client.poll();
        occupancy = 0;
      } else if (occupancy < 8) {
        if (occupancy == 0) ++want;
        ++occupancy;
        ++published;
        p.bus.publish("ping", to_bytes("d"));
      }
    }
    p.client.poll();
    EXPECT_EQ(p.t.doorbells() - base, want);
    EXPECT_EQ(received, published);
  }
}

TEST(Session, RandomScheduleDeliversExactlyOnce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Pair p(4);
    establish(p.client, p.agent, p.t, writer_plan());
    std::vector<int> accepted;
    std::vector<int> delivered;
    p.bus.subscribe("ping", [&](const Bytes& b) { delivered.push_back(std::stoi(to_text(b))); });
    for (int i = 0; i < 300; ++i) {
      if (rng() % 2 == 0) {
        try {
          p.client.write(2, to_bytes(std::to_string(i)));
          accepted.push_back(i);
        } catch (const BackpressureError&) {
        }
      } else {
        p.agent.spin_some(p.t.to_agent());
      }
    }
    p.agent.spin_some(p.t.to_agent());
    EXPECT_EQ(delivered, accepted);
  }
}

TEST(Executor, DefersWritesToNextWakeup) {
  SpinExecutor e(100);
  int flushed = 0;
  e.add_callback([&] { e.defer([&] { ++flushed; }); });
  e.mark_pending();
  e.spin_some();
  EXPECT_EQ(flushed, 0);
  e.spin_some();
  EXPECT_EQ(flushed, 1);
  EXPECT_EQ(e.next_wakeup(0), 100u);
  EXPECT_EQ(e.next_wakeup(100), 200u);
  EXPECT_EQ(e.next_wakeup(150), 200u);
}

TEST(Executor, EventDrivenFlushesImmediately) {
  SpinExecutor e(0);
  int flushed = 0;
  e.add_callback([&] { e.defer([&] { ++flushed; }); });
  e.mark_pending();
  e.spin_some();
  EXPECT_EQ(flushed, 1);
}

PingPongConfig quiet(std::uint64_t period_us, std::size_t rounds) {
  PingPongConfig c;
  c.spin_period_us = period_us;
  c.hop_jitter_us = 0;
  c.rounds = rounds;
  return c;
}

// Consecutive flushes sit on wakeups two periods apart and both ends of the
// measurement add the same two hops, so the round trip is exactly 2P.
TEST(PingPong, ZeroJitterIsTwoPeriods) {
  for (std::uint64_t p : {500u, 1000u, 2000u}) {
    const auto r = run_pingpong(quiet(p, 20), 1);
    ASSERT_EQ(r.rtt.size(), 20u);
    for (Cycles c : r.rtt) EXPECT_EQ(c, 2 * p * 50);
    EXPECT_EQ(r.min_ms(), r.max_ms());
    EXPECT_EQ(r.lost, 0u);
  }
}

TEST(PingPong, DefaultJitterBand) {
  PingPongConfig c;
  const auto r = run_pingpong(c, 42);
  ASSERT_EQ(r.rtt.size(), 1000u);
  EXPECT_LE(r.min_ms(), r.avg_ms());
  EXPECT_LE(r.avg_ms(), r.max_ms());
  // Two hop draws enter and two leave each measurement.
  EXPECT_GE(r.min_ms(), 2.0 - 0.05);
  EXPECT_LE(r.max_ms(), 2.0 + 0.05);
  EXPECT_EQ(r.doorbells, 1000u);
}

TEST(PingPong, EventDrivenIsTransportPlusIsrPath) {
  Engine engine(EngineOptions{kDefaultFreqHz, 3, 10'000});
  PingPong pp(engine, quiet(0, 5));
  const auto& r = pp.run();
  ASSERT_EQ(r.rtt.size(), 5u);
  const auto& t = engine.trace();
  const Cycles hop = 50 * 50;
  const std::size_t bell = t.find("doorbell", "");
  const std::size_t flush = t.find("flush", "");
  ASSERT_LT(bell, flush);
  const Cycles path = t.entries()[flush].cycle - t.entries()[bell].cycle;
  for (Cycles c : r.rtt) EXPECT_EQ(c, 3 * hop + path);
  EXPECT_LT(r.max_ms(), 0.2);
}

TEST(PingPong, TraceDecomposesRoundTrip) {
  Engine engine(EngineOptions{kDefaultFreqHz, 9, 10'000});
  PingPongConfig c;
  c.rounds = 50;
  PingPong pp(engine, c);
  const auto& r = pp.run();
  ASSERT_EQ(r.rtt.size(), 50u);
  const auto& e = engine.trace().entries();
  const std::vector<std::string> legs{"ping_publish", "agent_forward", "doorbell", "echo",
                                      "flush",        "agent_publish", "pong_deliver"};
  std::size_t at = 0;
  for (std::size_t round = 0; round < 50; ++round) {
    std::vector<Cycles> when;
    for (const auto& leg : legs) {
      while (at < e.size() && !(e[at].event == leg && (leg == "doorbell" ||
                                                      e[at].data.value("round", -1) ==
                                                          static_cast<long>(round)))) {
        ++at;
      }
      ASSERT_LT(at, e.size()) << leg << " round " << round;
      when.push_back(e[at].cycle);
    }
    Cycles sum = 0;
    for (std::size_t i = 1; i < when.size(); ++i) {
      ASSERT_GE(when[i], when[i - 1]);
      sum += when[i] - when[i - 1];
    }
    EXPECT_EQ(sum, r.rtt[round]);
    EXPECT_EQ(e[at].data.at("rtt").get<Cycles>(), r.rtt[round]);
    // GPOS hops: ping to agent, and agent to the pong subscriber.
    EXPECT_GE(when[1] - when[0], 50u * 50);
    EXPECT_LE(when[1] - when[0], 75u * 50);
    EXPECT_GE(when[6] - when[5], 50u * 50);
    EXPECT_LE(when[6] - when[5], 75u * 50);
  }
  EXPECT_EQ(engine.trace().count("doorbell"), 50u);
}

TEST(PingPong, TimeoutCountsLostRounds) {
  PingPongConfig c = quiet(1000, 5);
  c.timeout_ms = 1;  // shorter than the 2P round trip
  const auto r = run_pingpong(c, 1);
  EXPECT_TRUE(r.rtt.empty());
  EXPECT_EQ(r.lost, 5u);
}

TEST(PingPong, Deterministic) {
  PingPongConfig c;
  c.rounds = 100;
  EXPECT_EQ(run_pingpong(c, 4).rtt, run_pingpong(c, 4).rtt);
  EXPECT_NE(run_pingpong(c, 4).rtt, run_pingpong(c, 5).rtt);
}

TEST(PingPong, DoorbellIsrObeysKernelRules) {
  Engine engine(EngineOptions{kDefaultFreqHz, 1, 10'000});
  PingPongConfig c;
  c.rounds = 30;
  PingPong pp(engine, c);
  pp.run();
  const Machine& m = pp.machine();
  EXPECT_TRUE(m.os_errors().empty());
  EXPECT_TRUE(m.quiescent());
  EXPECT_EQ(m.hart().saves(), m.hart().restores());
  EXPECT_EQ(m.total_charged(), engine.now());
}

}  // namespace
}  // namespace ampsim::xrce

namespace ampsim::xrce {
namespace {

TEST(StreamAgent, LoopbackEchoesWrites) {
  const Bytes script = loopback_script(9, 5);
  std::istringstream in(std::string(script.begin(), script.end()));
  std::ostringstream out;
  StreamAgent sa(in, out);
  EXPECT_EQ(sa.serve(), 9u);
  const std::string s = out.str();
  const auto msgs = split_frames(Bytes(s.begin(), s.end()));
  std::size_t status = 0;
  std::vector<std::string> data;
  for (const auto& m : msgs) {
    EXPECT_EQ(m.session, 9u);
    if (m.type == MessageType::kStatus) {
      EXPECT_TRUE(decode_status(m.payload).ok());
      ++status;
    }
    if (m.type == MessageType::kData) data.push_back(to_text(m.payload));
  }
  EXPECT_EQ(status, 4u);
  EXPECT_EQ(data, (std::vector<std::string>{"msg 0", "msg 1", "msg 2", "msg 3", "msg 4"}));
}

TEST(StreamAgent, TruncatedTailIsLogged) {
  Bytes script = loopback_script(9, 1);
  script.resize(script.size() - 3);
  std::istringstream in(std::string(script.begin(), script.end()));
  std::ostringstream out;
  StreamAgent sa(in, out);
  sa.serve();
  EXPECT_EQ(sa.agent().dropped(), 1u);
}

}  // namespace
}  // namespace ampsim::xrce
