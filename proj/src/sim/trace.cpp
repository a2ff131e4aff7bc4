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

#include "ampsim/sim/trace.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ampsim {

void TraceLog::append(Cycles cycle, std::string src, std::string event,
                      nlohmann::json data) {
  if (!enabled_) return;
  if (!entries_.empty() && cycle < entries_.back().cycle) {
    throw std::logic_error("trace entries must be appended in cycle order");
  }
  if (data.is_null()) data = nlohmann::json::object();
  entries_.push_back({cycle, std::move(src), std::move(event), std::move(data)});
}

std::size_t TraceLog::count(std::string_view event) const {
  std::size_t n = 0;
  for (const auto& e : entries_) {
    if (e.event == event) ++n;
  }
  return n;
}

std::size_t TraceLog::find(std::string_view event, std::string_view name,
                           std::size_t from) const {
  for (std::size_t i = from; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.event != event) continue;
    if (name.empty()) return i;
    auto it = e.data.find("name");
    if (it != e.data.end() && it->is_string() && it->get<std::string>() == name) {
      return i;
    }
  }
  return entries_.size();
}

std::string to_json_line(const TraceEntry& entry) {
  // Field order is fixed: cycle, src, event, data.
  std::string line = "{\"cycle\":" + std::to_string(entry.cycle);
  line += ",\"src\":" + nlohmann::json(entry.src).dump();
  line += ",\"event\":" + nlohmann::json(entry.event).dump();
  line += ",\"data\":" + entry.data.dump();
  line += "}";
  return line;
}

void TraceLog::write_jsonl(std::ostream& out) const {
  for (const auto& e : entries_) out << to_json_line(e) << '\n';
}

std::string TraceLog::to_jsonl() const {
  std::ostringstream out;
  write_jsonl(out);
  return out.str();
}

}  // namespace ampsim
