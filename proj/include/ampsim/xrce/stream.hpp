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
#include <iosfwd>
#include <string>
#include <vector>

#include "ampsim/xrce/bus.hpp"
#include "ampsim/xrce/session.hpp"

namespace ampsim::xrce {

// Agent served over a real byte stream: frames are read back to back from
// `in`, replies are written to `out`. Single-threaded poll loop.
class StreamAgent {
 public:
  StreamAgent(std::istream& in, std::ostream& out);

  // Reads until end of stream. Returns the number of frames handled. A
  // trailing partial frame is logged and discarded.
  std::size_t serve();

  const XrceAgent& agent() const { return agent_; }
  Bus& bus() { return bus_; }
  std::uint64_t frames_out() const { return frames_out_; }

 private:
  std::istream& in_;
  std::ostream& out_;
  Bus bus_;
  XrceAgent agent_;
  std::uint64_t frames_out_ = 0;
};

// Client frames for a self-contained loopback session: one topic with a
// writer and a reader on it, then `count` writes. Every write comes back as
// a DATA frame.
Bytes loopback_script(std::uint32_t key, std::size_t count);

// Splits a byte stream into decoded messages. Throws XrceError on a
// malformed or truncated frame.
std::vector<Message> split_frames(const Bytes& stream);

}  // namespace ampsim::xrce
