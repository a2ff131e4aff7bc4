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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ampsim/sim/clock.hpp"
#include "json.hpp"

namespace ampsim {

struct TraceEntry {
  Cycles cycle = 0;
  std::string src;
  std::string event;
  nlohmann::json data = nlohmann::json::object();
};

// Append-only, sorted by cycle then insertion order.
class TraceLog {
 public:
  void append(Cycles cycle, std::string src, std::string event,
              nlohmann::json data = nlohmann::json::object());

  // A disabled log drops appends. Used by large randomized sweeps.
  void set_enabled(bool enabled) { enabled_ = enabled; }
  bool enabled() const { return enabled_; }

  const std::vector<TraceEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  void clear() { entries_.clear(); }

  std::size_t count(std::string_view event) const;
  // First entry at or after `from` with the given event whose data.name
  // equals `name` (any name when empty). Returns size() when absent.
  std::size_t find(std::string_view event, std::string_view name,
                   std::size_t from = 0) const;

  // One {"cycle":..,"src":..,"event":..,"data":{..}} object per line.
  void write_jsonl(std::ostream& out) const;
  std::string to_jsonl() const;

 private:
  std::vector<TraceEntry> entries_;
  bool enabled_ = true;
};

std::string to_json_line(const TraceEntry& entry);

}  // namespace ampsim
