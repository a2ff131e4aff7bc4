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

#include "ampsim/xrce/stream.hpp"

#include <istream>
#include <ostream>

namespace ampsim::xrce {

StreamAgent::StreamAgent(std::istream& in, std::ostream& out)
    : in_(in), out_(out), agent_(bus_, [this](const Bytes& f) {
        out_.write(reinterpret_cast<const char*>(f.data()), static_cast<std::streamsize>(f.size()));
        ++frames_out_;
        return static_cast<bool>(out_);
      }) {}

std::size_t StreamAgent::serve() {
  std::size_t n = 0;
  Bytes frame(kHeaderSize);
  for (;;) {
    in_.read(reinterpret_cast<char*>(frame.data()), kHeaderSize);
    const auto got = static_cast<std::size_t>(in_.gcount());
    if (got == 0) break;
    frame.resize(kHeaderSize);
    if (got < kHeaderSize) {
      frame.resize(got);
      agent_.handle(frame);  // logged as malformed
      break;
    }
    const std::size_t size = *frame_size(frame);
    frame.resize(size);
    in_.read(reinterpret_cast<char*>(frame.data() + kHeaderSize),
             static_cast<std::streamsize>(size - kHeaderSize));
    frame.resize(kHeaderSize + static_cast<std::size_t>(in_.gcount()));
    agent_.handle(frame);
    ++n;
    if (frame.size() < size) break;
  }
  out_.flush();
  return n;
}

Bytes loopback_script(std::uint32_t key, std::size_t count) {
  Bytes out;
  auto add = [&](const Message& m) {
    const Bytes f = encode(m);
    out.insert(out.end(), f.begin(), f.end());
  };
  add(Message{MessageType::kCreateClient, key, kStreamNone, 0, 0, {}});
  add(Message{MessageType::kCreate, key, kStreamNone, 0, 1,
              encode(CreateRequest{EntityKind::kTopic, 0, 0, "loop"})});
  add(Message{MessageType::kCreate, key, kStreamNone, 0, 2,
              encode(CreateRequest{EntityKind::kDataWriter, 0, 1, ""})});
  add(Message{MessageType::kCreate, key, kStreamNone, 0, 3,
              encode(CreateRequest{EntityKind::kDataReader, 0, 1, ""})});
  for (std::size_t i = 0; i < count; ++i) {
    add(Message{MessageType::kWriteData, key, kStreamBestEffort,
                static_cast<std::uint16_t>(i + 1), 2, to_bytes("msg " + std::to_string(i))});
  }
  return out;
}

std::vector<Message> split_frames(const Bytes& stream) {
  std::vector<Message> out;
  std::size_t at = 0;
  while (at < stream.size()) {
    const std::span<const std::uint8_t> rest(stream.data() + at, stream.size() - at);
    const auto size = frame_size(rest);
    if (!size || *size > rest.size()) throw XrceError("truncated frame at byte " + std::to_string(at));
    out.push_back(decode(rest.first(*size)));
    at += *size;
  }
  return out;
}

}  // namespace ampsim::xrce
