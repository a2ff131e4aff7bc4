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

#include "ampsim/fabric/clic.hpp"

#include <algorithm>
#include <string>

namespace ampsim {

Clic::Clic(std::size_t lines) : lines_(lines) {
  if (lines == 0 || lines > kClicMaxLines) {
    throw std::invalid_argument("CLIC line count must be in 1..4096, got " +
                                std::to_string(lines));
  }
}

void Clic::check_line(std::uint32_t line) const {
  if (line >= lines_.size()) {
    throw std::out_of_range("CLIC line " + std::to_string(line) + " out of range");
  }
}

void Clic::configure(std::uint32_t line, const ClicLineConfig& config) {
  check_line(line);
  lines_[line].config = config;
  if (config.trigger == Trigger::kLevel) lines_[line].ip = lines_[line].input;
}

const ClicLineConfig& Clic::config(std::uint32_t line) const {
  check_line(line);
  return lines_[line].config;
}

void Clic::set_enable(std::uint32_t line, bool enabled) {
  check_line(line);
  lines_[line].config.enabled = enabled;
}

void Clic::set_ctl(std::uint32_t line, std::uint8_t ctl) {
  check_line(line);
  lines_[line].config.ctl = ctl;
}

std::uint8_t Clic::make_ctl(std::uint8_t level, std::uint8_t priority) {
  return static_cast<std::uint8_t>(((level & 0x0F) << 4) | (priority & 0x0F));
}

std::uint8_t Clic::level(std::uint32_t line) const {
  check_line(line);
  return lines_[line].config.ctl >> 4;
}

std::uint8_t Clic::priority(std::uint32_t line) const {
  check_line(line);
  return lines_[line].config.ctl & 0x0F;
}

void Clic::set_input(std::uint32_t line, bool value) {
  check_line(line);
  Line& l = lines_[line];
  const bool rising = value && !l.input;
  l.input = value;
  if (l.config.trigger == Trigger::kLevel) {
    l.ip = value;
  } else if (rising) {
    l.ip = true;
  }
}

void Clic::pulse(std::uint32_t line) {
  set_input(line, true);
  set_input(line, false);
}

void Clic::set_pending(std::uint32_t line, bool value) {
  check_line(line);
  // Level lines follow their wire; software writes are ignored.
  if (lines_[line].config.trigger == Trigger::kEdge) lines_[line].ip = value;
}

bool Clic::pending(std::uint32_t line) const {
  check_line(line);
  return lines_[line].ip;
}

ClicWinner Clic::winner_of(std::uint32_t line) const {
  const Line& l = lines_[line];
  return ClicWinner{line, static_cast<std::uint8_t>(l.config.ctl >> 4),
                    static_cast<std::uint8_t>(l.config.ctl & 0x0F), l.config.shv};
}

std::optional<ClicWinner> Clic::top() const {
  std::optional<ClicWinner> best;
  for (std::uint32_t i = 0; i < lines_.size(); ++i) {
    const Line& l = lines_[i];
    if (!l.ip || !l.config.enabled) continue;
    const ClicWinner w = winner_of(i);
    if (!best || w.level > best->level ||
        (w.level == best->level && w.priority > best->priority)) {
      best = w;
    }
  }
  return best;
}

std::optional<ClicWinner> Clic::arbitrate(std::uint8_t running_level,
                                          std::uint8_t mintthresh) const {
  auto best = top();
  if (!best) return std::nullopt;
  if (best->level <= std::max(running_level, mintthresh)) return std::nullopt;
  return best;
}

bool Clic::refresh_handshake(std::uint8_t running_level, std::uint8_t mintthresh) {
  const auto w = arbitrate(running_level, mintthresh);
  const IrqHandshake before = handshake_;
  if (!w) {
    handshake_.req = false;
  } else if (!handshake_.req) {
    handshake_ = IrqHandshake{true, w->id, false, w->level, w->shv};
  } else if (w->id != handshake_.id) {
    // Late arrival: a better line replaces the carried id before ack.
    handshake_.id = w->id;
    handshake_.level = w->level;
    handshake_.shv = w->shv;
  }
  return before.req != handshake_.req || before.id != handshake_.id;
}

ClicWinner Clic::ack() {
  if (!handshake_.req) throw ProtocolError("CLIC ack without an outstanding request");
  const std::uint32_t id = handshake_.id;
  ClicWinner taken = winner_of(id);
  handshake_.req = false;
  handshake_.ack = true;
  if (lines_[id].config.trigger == Trigger::kEdge) lines_[id].ip = false;
  return taken;
}

void Clic::take(std::uint32_t line) {
  check_line(line);
  if (lines_[line].config.trigger == Trigger::kEdge) lines_[line].ip = false;
}

std::uint32_t Clic::read(std::uint64_t offset) const {
  if (offset < kLineBase || (offset - kLineBase) / 4 >= lines_.size()) {
    throw std::out_of_range("CLIC read at unmapped offset " + std::to_string(offset));
  }
  const Line& l = lines_[(offset - kLineBase) / 4];
  const std::uint32_t attr = (l.config.shv ? 1u : 0u) |
                             (l.config.trigger == Trigger::kEdge ? 2u : 0u);
  return (l.ip ? 1u : 0u) | ((l.config.enabled ? 1u : 0u) << 8) | (attr << 16) |
         (static_cast<std::uint32_t>(l.config.ctl) << 24);
}

void Clic::write(std::uint64_t offset, std::uint32_t value) {
  if (offset < kLineBase || (offset - kLineBase) / 4 >= lines_.size()) {
    throw std::out_of_range("CLIC write at unmapped offset " + std::to_string(offset));
  }
  const auto line = static_cast<std::uint32_t>((offset - kLineBase) / 4);
  Line& l = lines_[line];
  const std::uint32_t attr = (value >> 16) & 0xFF;
  l.config.enabled = ((value >> 8) & 1u) != 0;
  l.config.shv = (attr & 1u) != 0;
  l.config.trigger = (attr & 2u) != 0 ? Trigger::kEdge : Trigger::kLevel;
  l.config.ctl = static_cast<std::uint8_t>(value >> 24);
  if (l.config.trigger == Trigger::kEdge) {
    l.ip = (value & 1u) != 0;
  } else {
    l.ip = l.input;
  }
}

}  // namespace ampsim
