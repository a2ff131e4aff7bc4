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

#include "ampsim/xrce/session.hpp"

namespace ampsim::xrce {
namespace {

// Serial-number order on 16-bit sequence numbers.
bool newer(std::uint16_t seq, const std::optional<std::uint16_t>& last) {
  if (!last) return true;
  return static_cast<std::int16_t>(static_cast<std::uint16_t>(seq - *last)) > 0;
}

}  // namespace

XrceClient::XrceClient(std::uint32_t key, RingTransport& transport)
    : key_(key), transport_(transport) {}

void XrceClient::send(Message m) {
  m.session = key_;
  const Bytes frame = encode(m);
  const PushResult r = transport_.send_to_agent(frame);
  if (r == PushResult::kFull) throw BackpressureError("agent-bound ring full");
  if (r == PushResult::kOversize) throw XrceError("frame exceeds ring slot size");
}

void XrceClient::create_entities(const std::vector<EntitySpec>& plan) {
  std::map<std::uint16_t, Entity> add;
  for (const EntitySpec& e : plan) {
    if (e.id == 0) throw XrceError("entity id 0 is reserved");
    if (entities_.count(e.id) || pending_.count(e.id) || add.count(e.id)) {
      throw XrceError("duplicate entity id " + std::to_string(e.id));
    }
    add[e.id] = Entity{e.request.kind, e.request.topic, e.request.name};
  }
  if (!client_acked_) send(Message{MessageType::kCreateClient, 0, kStreamNone, 0, 0, {}});
  for (const EntitySpec& e : plan) {
    pending_[e.id] = add[e.id];
    send(Message{MessageType::kCreate, 0, kStreamNone, 0, e.id, encode(e.request)});
  }
}

void XrceClient::write(std::uint16_t writer, const Bytes& payload) {
  if (state_ != SessionState::kConnected) throw XrceError("session not connected");
  auto it = entities_.find(writer);
  if (it == entities_.end() || it->second.kind != EntityKind::kDataWriter) {
    throw XrceError("entity " + std::to_string(writer) + " is not a DataWriter");
  }
  const std::uint16_t seq = ++out_seq_[kStreamBestEffort];
  try {
    send(Message{MessageType::kWriteData, 0, kStreamBestEffort, seq, writer, payload});
  } catch (const BackpressureError&) {
    --out_seq_[kStreamBestEffort];
    throw;
  }
}

void XrceClient::on_data(std::uint16_t reader, DataCallback fn) {
  callbacks_[reader] = std::move(fn);
}

std::size_t XrceClient::poll() {
  std::size_t n = 0;
  while (auto frame = transport_.to_client().pop()) {
    ++n;
    Message m;
    try {
      m = decode(*frame);
    } catch (const XrceError&) {
      ++dropped_;
      continue;
    }
    if (m.session != key_) {
      ++dropped_;
      continue;
    }
    if (m.type == MessageType::kStatus) {
      const Status st = decode_status(m.payload);
      if (st.request == MessageType::kCreateClient) {
        client_acked_ = st.ok();
        if (!st.ok() && !rejection_) rejection_ = st.reason;
      } else if (st.request == MessageType::kCreate) {
        auto it = pending_.find(m.entity);
        if (it != pending_.end()) {
          if (st.ok()) {
            entities_[m.entity] = it->second;
          } else if (!rejection_) {
            rejection_ = "entity " + std::to_string(m.entity) + ": " + st.reason;
          }
          pending_.erase(it);
        }
      }
      if (client_acked_ && pending_.empty() && !rejection_) state_ = SessionState::kConnected;
      continue;
    }
    if (m.type == MessageType::kData) {
      auto& last = in_seq_[m.stream];
      if (!newer(m.seq, last)) {
        ++dropped_;
        continue;
      }
      last = m.seq;
      ++received_;
      auto cb = callbacks_.find(m.entity);
      if (cb != callbacks_.end()) cb->second(m.payload);
      continue;
    }
    ++dropped_;
  }
  return n;
}

XrceAgent::XrceAgent(Bus& bus, Sink to_client) : bus_(bus), sink_(std::move(to_client)) {}

void XrceAgent::drop(const std::string& why) {
  ++dropped_;
  log_.push_back(why);
}

void XrceAgent::emit(Message m) {
  m.session = *session_;
  if (!sink_(encode(m))) drop("client-bound ring full");
}

void XrceAgent::reply(MessageType request, std::uint16_t entity, std::uint8_t result,
                      const std::string& reason) {
  emit(Message{MessageType::kStatus, 0, kStreamNone, 0, entity,
               encode(Status{request, result, reason})});
}

std::optional<std::string> XrceAgent::check(const CreateRequest& r) const {
  auto kind_of = [&](std::uint16_t id) -> std::optional<EntityKind> {
    auto it = entities_.find(id);
    if (it == entities_.end()) return std::nullopt;
    return it->second.kind;
  };
  auto parent_ok = [&](EntityKind want) {
    return r.parent == 0 || kind_of(r.parent) == want;
  };
  switch (r.kind) {
    case EntityKind::kParticipant:
      return std::nullopt;
    case EntityKind::kTopic:
      if (r.name.empty()) return "topic needs a name";
      if (!parent_ok(EntityKind::kParticipant)) return "parent is not a participant";
      return std::nullopt;
    case EntityKind::kPublisher:
    case EntityKind::kSubscriber:
      if (!parent_ok(EntityKind::kParticipant)) return "parent is not a participant";
      return std::nullopt;
    case EntityKind::kDataWriter:
    case EntityKind::kDataReader: {
      const EntityKind parent = r.kind == EntityKind::kDataWriter ? EntityKind::kPublisher
                                                                  : EntityKind::kSubscriber;
      if (kind_of(r.topic) != EntityKind::kTopic) {
        return "unknown topic " + std::to_string(r.topic);
      }
      if (!parent_ok(parent)) return std::string("parent is not a ") + to_string(parent);
      return std::nullopt;
    }
  }
  return "unknown kind";
}

void XrceAgent::handle(std::span<const std::uint8_t> frame) {
  Message m;
  try {
    m = decode(frame);
  } catch (const XrceError& e) {
    drop(std::string("malformed frame: ") + e.what());
    return;
  }
  if (m.type == MessageType::kCreateClient) {
    session_ = m.session;
    entities_.clear();
    in_seq_.clear();
    out_seq_.clear();
    reply(MessageType::kCreateClient, 0, 0, "");
    return;
  }
  if (!session_ || m.session != *session_) {
    drop("frame for unknown session " + std::to_string(m.session));
    return;
  }
  switch (m.type) {
    case MessageType::kCreate: {
      CreateRequest r;
      try {
        r = decode_create(m.payload);
      } catch (const XrceError& e) {
        reply(MessageType::kCreate, m.entity, 1, e.what());
        return;
      }
      std::optional<std::string> err;
      if (m.entity == 0) {
        err = "entity id 0 is reserved";
      } else if (entities_.count(m.entity)) {
        err = "duplicate entity id";
      } else {
        err = check(r);
      }
      if (err) {
        reply(MessageType::kCreate, m.entity, 1, *err);
        return;
      }
      Entity e{r.kind, r.topic, r.name};
      entities_[m.entity] = e;
      if (r.kind == EntityKind::kDataReader) {
        const std::uint16_t reader = m.entity;
        bus_.subscribe(entities_.at(r.topic).name, [this, reader](const Bytes& payload) {
          const std::uint16_t seq = ++out_seq_[kStreamBestEffort];
          ++forwarded_;
          emit(Message{MessageType::kData, 0, kStreamBestEffort, seq, reader, payload});
        });
      }
      reply(MessageType::kCreate, m.entity, 0, "");
      return;
    }
    case MessageType::kWriteData: {
      auto& last = in_seq_[m.stream];
      if (!newer(m.seq, last)) {
        drop("stale sequence number " + std::to_string(m.seq));
        return;
      }
      auto it = entities_.find(m.entity);
      if (it == entities_.end() || it->second.kind != EntityKind::kDataWriter) {
        drop("WRITE_DATA for unknown writer " + std::to_string(m.entity));
        return;
      }
      last = m.seq;
      ++published_;
      bus_.publish(entities_.at(it->second.topic).name, m.payload);
      return;
    }
    default:
      drop(std::string("unexpected ") + to_string(m.type) + " from client");
      return;
  }
}

std::size_t XrceAgent::spin_some(Ring& inbound) {
  std::size_t n = 0;
  while (auto frame = inbound.pop()) {
    handle(*frame);
    ++n;
  }
  return n;
}

void establish(XrceClient& client, XrceAgent& agent, RingTransport& transport,
               const std::vector<EntitySpec>& plan) {
  client.create_entities(plan);
  // Each round moves at most one ring's worth of frames each way.
  for (int round = 0; round < 1'000; ++round) {
    const std::size_t a = agent.spin_some(transport.to_agent());
    const std::size_t c = client.poll();
    if (client.rejection()) throw XrceError("agent rejected: " + *client.rejection());
    if (client.state() == SessionState::kConnected && transport.to_agent().empty()) return;
    if (a == 0 && c == 0) break;
  }
  throw XrceError("session not established");
}

}  // namespace ampsim::xrce
