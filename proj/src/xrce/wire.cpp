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

#include "ampsim/xrce/wire.hpp"

namespace ampsim::xrce {
namespace {

void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint16_t get_u16(std::span<const std::uint8_t> d, std::size_t at) {
  return static_cast<std::uint16_t>(d[at] | (d[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> d, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{d[at + i]} << (8 * i);
  return v;
}

bool known_type(std::uint8_t t) { return t >= 1 && t <= 5; }

}  // namespace

const char* to_string(MessageType type) {
  switch (type) {
    case MessageType::kCreateClient: return "CREATE_CLIENT";
    case MessageType::kCreate: return "CREATE";
    case MessageType::kStatus: return "STATUS";
    case MessageType::kWriteData: return "WRITE_DATA";
    case MessageType::kData: return "DATA";
  }
  return "?";
}

const char* to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::kParticipant: return "PARTICIPANT";
    case EntityKind::kTopic: return "TOPIC";
    case EntityKind::kPublisher: return "PUBLISHER";
    case EntityKind::kSubscriber: return "SUBSCRIBER";
    case EntityKind::kDataWriter: return "DATAWRITER";
    case EntityKind::kDataReader: return "DATAREADER";
  }
  return "?";
}

Bytes encode(const Message& m) {
  if (m.payload.size() > 0xFFFF) throw XrceError("payload larger than 65535 bytes");
  Bytes out;
  out.reserve(kHeaderSize + m.payload.size());
  out.push_back(static_cast<std::uint8_t>(m.type));
  put_u32(out, m.session);
  out.push_back(m.stream);
  put_u16(out, m.seq);
  put_u16(out, m.entity);
  put_u16(out, static_cast<std::uint16_t>(m.payload.size()));
  out.insert(out.end(), m.payload.begin(), m.payload.end());
  return out;
}

std::optional<std::size_t> frame_size(std::span<const std::uint8_t> data) {
  if (data.size() < kHeaderSize) return std::nullopt;
  return kHeaderSize + get_u16(data, 10);
}

Message decode(std::span<const std::uint8_t> frame) {
  if (frame.size() < kHeaderSize) throw XrceError("short frame");
  if (!known_type(frame[0])) throw XrceError("unknown message type " + std::to_string(frame[0]));
  Message m;
  m.type = static_cast<MessageType>(frame[0]);
  m.session = get_u32(frame, 1);
  m.stream = frame[5];
  m.seq = get_u16(frame, 6);
  m.entity = get_u16(frame, 8);
  const std::size_t len = get_u16(frame, 10);
  if (frame.size() != kHeaderSize + len) throw XrceError("length field does not match frame");
  m.payload.assign(frame.begin() + kHeaderSize, frame.end());
  return m;
}

Bytes encode(const CreateRequest& r) {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(r.kind));
  put_u16(out, r.parent);
  put_u16(out, r.topic);
  out.insert(out.end(), r.name.begin(), r.name.end());
  return out;
}

CreateRequest decode_create(std::span<const std::uint8_t> p) {
  if (p.size() < 5) throw XrceError("short CREATE payload");
  if (p[0] < 1 || p[0] > 6) throw XrceError("unknown entity kind " + std::to_string(p[0]));
  CreateRequest r;
  r.kind = static_cast<EntityKind>(p[0]);
  r.parent = get_u16(p, 1);
  r.topic = get_u16(p, 3);
  r.name = to_text(p.subspan(5));
  return r;
}

Bytes encode(const Status& s) {
  Bytes out{static_cast<std::uint8_t>(s.request), s.result};
  out.insert(out.end(), s.reason.begin(), s.reason.end());
  return out;
}

Status decode_status(std::span<const std::uint8_t> p) {
  if (p.size() < 2 || !known_type(p[0])) throw XrceError("bad STATUS payload");
  return Status{static_cast<MessageType>(p[0]), p[1], to_text(p.subspan(2))};
}

Bytes to_bytes(const std::string& text) { return Bytes(text.begin(), text.end()); }

std::string to_text(std::span<const std::uint8_t> bytes) {
  return std::string(bytes.begin(), bytes.end());
}

}  // namespace ampsim::xrce
