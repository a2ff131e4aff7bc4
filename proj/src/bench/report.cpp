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

#include "ampsim/bench/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace ampsim::bench {
namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return num == 0 ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void write_csv(std::ostream& out, const SuiteReport& report, std::uint64_t freq_hz) {
  const SimClock clock(freq_hz);
  out << "metric,config,run,cycles,ns\n";
  for (const MetricReport& e : report.entries) {
    for (std::size_t i = 0; i < e.samples.size(); ++i) {
      const std::uint64_t v = e.samples[i];
      const bool ns = e.metric == MetricId::kPingPong;
      const std::uint64_t cycles = ns ? clock.from_ns(v) : v;
      const std::uint64_t nanos = ns ? v : clock.to_ns(v);
      out << to_string(e.metric) << ',' << e.config << ',' << i << ',' << cycles << ',' << nanos
          << '\n';
    }
  }
}

nlohmann::json summary_json(const SuiteReport& report) {
  nlohmann::json out = nlohmann::json::object();
  for (const MetricReport& e : report.entries) {
    nlohmann::json cell{{"min", e.min()},
                        {"avg", e.avg()},
                        {"max", e.max()},
                        {"runs", e.samples.size()},
                        {"unit", e.unit()}};
    if (e.metric == MetricId::kPingPong) cell["lost"] = e.lost;
    out[to_string(e.metric)][e.config] = cell;
  }
  return out;
}

nlohmann::json ratios_json(const SuiteReport& report) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t m = 0; m < report.metrics.size(); ++m) {
    const std::uint64_t base = report.at(m, 0).max();
    for (std::size_t c = 1; c < report.configs.size(); ++c) {
      out[to_string(report.metrics[m])][report.configs[c]] = ratio(report.at(m, c).max(), base);
    }
  }
  return out;
}

std::string gnuplot_table(const SuiteReport& report) {
  std::ostringstream out;
  out << "# metric";
  for (const auto& c : report.configs) out << ' ' << c;
  out << '\n';
  for (std::size_t m = 0; m < report.metrics.size(); ++m) {
    out << to_string(report.metrics[m]);
    for (std::size_t c = 0; c < report.configs.size(); ++c) out << ' ' << report.at(m, c).max();
    out << '\n';
  }
  return out.str();
}

std::string comparison_table(const SuiteReport& report) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-12s", "metric");
  out << buf;
  for (const auto& c : report.configs) {
    std::snprintf(buf, sizeof buf, " %14s", c.c_str());
    out << buf;
  }
  for (std::size_t c = 1; c < report.configs.size(); ++c) {
    const std::string h = report.configs[c] + "/" + report.configs[0];
    std::snprintf(buf, sizeof buf, " %14s", h.c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t m = 0; m < report.metrics.size(); ++m) {
    std::snprintf(buf, sizeof buf, "%-12s", to_string(report.metrics[m]));
    out << buf;
    for (std::size_t c = 0; c < report.configs.size(); ++c) {
      std::snprintf(buf, sizeof buf, " %14llu",
                    static_cast<unsigned long long>(report.at(m, c).max()));
      out << buf;
    }
    const std::uint64_t base = report.at(m, 0).max();
    for (std::size_t c = 1; c < report.configs.size(); ++c) {
      std::snprintf(buf, sizeof buf, " %14s", fixed(ratio(report.at(m, c).max(), base), 3).c_str());
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ampsim::bench
