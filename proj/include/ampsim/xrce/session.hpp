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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ampsim/xrce/bus.hpp"
#include "ampsim/xrce/transport.hpp"
#include "ampsim/xrce/wire.hpp"

namespace ampsim::xrce {

enum class SessionState : std::uint8_t { kDisconnected, kConnected };

struct EntitySpec {
  std::uint16_t id = 0;
  CreateRequest request;
};

// Entity table entry on either side.
struct Entity {
  EntityKind kind = EntityKind::kTopic;
  std::uint16_t topic = 0;
  std::string name;
};

// RTOS-side endpoint. Sends over the agent-bound ring and reads the
// client-bound ring in poll().
class XrceClient {
 public:
  using DataCallback = std::function<void(const Bytes&)>;

  XrceClient(std::uint32_t key, RingTransport& transport);

  std::uint32_t key() const { return key_; }
  SessionState state() const { return state_; }
  const std::map<std::uint16_t, Entity>& entities() const { return entities_; }
  // Reason of the first rejected CREATE, if any.
  const std::optional<std::string>& rejection() const { return rejection_; }

  // Sends CREATE_CLIENT and one CREATE per entry. Throws XrceError on a
  // duplicate or zero id; the table is updated as acknowledgements arrive.
  void create_entities(const std::vector<EntitySpec>& plan);

  // Throws XrceError when not connected or `writer` is not a DataWriter,
  // BackpressureError when the ring is full.
  void write(std::uint16_t writer, const Bytes& payload);

  void on_data(std::uint16_t reader, DataCallback fn);

  // Drains the client-bound ring. Returns the number of frames handled.
  std::size_t poll();

  std::uint64_t received() const { return received_; }
  std::uint64_t dropped() const { return dropped_; }

 private:
  void send(Message m);

  std::uint32_t key_;
  RingTransport& transport_;
  SessionState state_ = SessionState::kDisconnected;
  std::map<std::uint16_t, Entity> entities_;
  std::map<std::uint16_t, Entity> pending_;
  bool client_acked_ = false;
  std::optional<std::string> rejection_;
  std::map<std::uint16_t, DataCallback> callbacks_;
  std::map<std::uint8_t, std::uint16_t> out_seq_;
  std::map<std::uint8_t, std::optional<std::uint16_t>> in_seq_;
  std::uint64_t received_ = 0;
  std::uint64_t dropped_ = 0;
};

// GPOS-side endpoint bridging one client session onto a Bus.
class XrceAgent {
 public:
  // Returns false when the frame could not be queued to the client.
  using Sink = std::function<bool(const Bytes&)>;

  XrceAgent(Bus& bus, Sink to_client);

  // Processes one frame. Malformed frames are dropped and logged.
  void handle(std::span<const std::uint8_t> frame);
  // Drains `inbound` through handle(); returns the number of frames.
  std::size_t spin_some(Ring& inbound);

  std::optional<std::uint32_t> session() const { return session_; }
  const std::map<std::uint16_t, Entity>& entities() const { return entities_; }
  const std::vector<std::string>& log() const { return log_; }
  std::uint64_t dropped() const { return dropped_; }
  std::uint64_t forwarded() const { return forwarded_; }
  std::uint64_t published() const { return published_; }

 private:
  void reply(MessageType request, std::uint16_t entity, std::uint8_t result,
             const std::string& reason);
  void emit(Message m);
  std::optional<std::string> check(const CreateRequest& r) const;
  void drop(const std::string& why);

  Bus& bus_;
  Sink sink_;
  std::optional<std::uint32_t> session_;
  std::map<std::uint16_t, Entity> entities_;
  std::map<std::uint8_t, std::optional<std::uint16_t>> in_seq_;
  std::map<std::uint8_t, std::uint16_t> out_seq_;
  std::vector<std::string> log_;
  std::uint64_t dropped_ = 0;
  std::uint64_t forwarded_ = 0;
  std::uint64_t published_ = 0;
};

// Creates `plan` and pumps both sides until acknowledged. Throws XrceError
// with the agent's reason on rejection.
void establish(XrceClient& client, XrceAgent& agent, RingTransport& transport,
               const std::vector<EntitySpec>& plan);

}  // namespace ampsim::xrce
