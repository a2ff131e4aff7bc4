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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ampsim::xrce {

using Bytes = std::vector<std::uint8_t>;

// Malformed frame or protocol misuse on either endpoint.
class XrceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MessageType : std::uint8_t {
  kCreateClient = 1,
  kCreate = 2,
  kStatus = 3,
  kWriteData = 4,
  kData = 5,
};

enum class EntityKind : std::uint8_t {
  kParticipant = 1,
  kTopic = 2,
  kPublisher = 3,
  kSubscriber = 4,
  kDataWriter = 5,
  kDataReader = 6,
};

const char* to_string(MessageType type);
const char* to_string(EntityKind kind);

// Frame layout, little endian:
//   u8 type | u32 session | u8 stream | u16 seq | u16 entity | u16 len | payload
struct Message {
  MessageType type = MessageType::kData;
  std::uint32_t session = 0;
  std::uint8_t stream = 0;
  std::uint16_t seq = 0;
  std::uint16_t entity = 0;
  Bytes payload;

  bool operator==(const Message&) const = default;
};

inline constexpr std::size_t kHeaderSize = 12;
inline constexpr std::uint8_t kStreamNone = 0;
inline constexpr std::uint8_t kStreamBestEffort = 1;

Bytes encode(const Message& m);
// Throws XrceError on a short frame, length mismatch or unknown type.
Message decode(std::span<const std::uint8_t> frame);
// Size of the frame starting at `data` once its header is available.
std::optional<std::size_t> frame_size(std::span<const std::uint8_t> data);

// CREATE payload: u8 kind | u16 parent | u16 topic | name bytes.
struct CreateRequest {
  EntityKind kind = EntityKind::kTopic;
  std::uint16_t parent = 0;
  std::uint16_t topic = 0;
  std::string name;

  bool operator==(const CreateRequest&) const = default;
};

Bytes encode(const CreateRequest& r);
CreateRequest decode_create(std::span<const std::uint8_t> payload);

// STATUS payload: u8 request type | u8 result (0 = ok) | reason bytes.
struct Status {
  MessageType request = MessageType::kCreate;
  std::uint8_t result = 0;
  std::string reason;

  bool ok() const { return result == 0; }
  bool operator==(const Status&) const = default;
};

Bytes encode(const Status& s);
Status decode_status(std::span<const std::uint8_t> payload);

Bytes to_bytes(const std::string& text);
std::string to_text(std::span<const std::uint8_t> bytes);

}  // namespace ampsim::xrce
