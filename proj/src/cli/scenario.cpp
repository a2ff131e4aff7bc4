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

#include "ampsim/cli/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace ampsim::cli {
namespace {

using nlohmann::json;

json scalar(const YAML::Node& n) {
  const std::string& s = n.Scalar();
  if (n.Tag() == "!") return s;  // quoted
  if (s == "true" || s == "True") return true;
  if (s == "false" || s == "False") return false;
  if (s == "null" || s == "~" || s.empty()) return nullptr;
  if (s.find_first_not_of("0123456789") == std::string::npos) {
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      return s;
    }
  }
  if (s.find_first_not_of("+-0123456789.eE") == std::string::npos) {
    try {
      std::size_t used = 0;
      const double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
  }
  return s;
}

json convert(const YAML::Node& n, const std::string& path, std::map<std::string, int>& lines) {
  switch (n.Type()) {
    case YAML::NodeType::Map: {
      json out = json::object();
      for (const auto& kv : n) {
        const std::string key = kv.first.as<std::string>();
        const std::string sub = path.empty() ? key : path + "." + key;
        if (out.contains(key)) {
          throw ScenarioError("line " + std::to_string(kv.first.Mark().line + 1) +
                              ": duplicate key '" + sub + "'");
        }
        lines[sub] = kv.first.Mark().line + 1;
        out[key] = convert(kv.second, sub, lines);
      }
      return out;
    }
    case YAML::NodeType::Sequence: {
      json out = json::array();
      std::size_t i = 0;
      for (const auto& item : n) {
        const std::string sub = path + "." + std::to_string(i++);
        lines[sub] = item.Mark().line + 1;
        out.push_back(convert(item, sub, lines));
      }
      return out;
    }
    case YAML::NodeType::Scalar:
      return scalar(n);
    default:
      return nullptr;
  }
}

// Typed access with key-path error messages.
class Reader {
 public:
  explicit Reader(const Document& doc) : doc_(doc) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    auto it = doc_.lines.find(path);
    std::string where = it == doc_.lines.end() ? "" : "line " + std::to_string(it->second) + ": ";
    throw ScenarioError(where + msg);
  }

  void keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(path, "'" + path + "' must be a mapping");
    for (const auto& el : obj.items()) {
      if (!allowed.count(el.key())) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        const std::string where = path.empty() ? "top level" : "'" + path + "'";
        fail(join(path, el.key()),
             "unknown key '" + el.key() + "' in " + where + " (allowed: " + list + ")");
      }
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  std::uint64_t uint(const json& obj, const std::string& path, const std::string& key,
                     std::uint64_t def) const {
    if (!obj.contains(key)) return def;
    const json& v = obj[key];
    if (!v.is_number_unsigned()) fail(join(path, key), "'" + join(path, key) + "' must be an unsigned integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const json& obj, const std::string& path, const std::string& key, bool def) const {
    if (!obj.contains(key)) return def;
    const json& v = obj[key];
    if (!v.is_boolean()) fail(join(path, key), "'" + join(path, key) + "' must be true or false");
    return v.get<bool>();
  }

  std::string string(const json& obj, const std::string& path, const std::string& key,
                     const std::optional<std::string>& def) const {
    if (!obj.contains(key)) {
      if (!def) fail(path, "missing key '" + join(path, key) + "'");
      return *def;
    }
    const json& v = obj[key];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    fail(join(path, key), "'" + join(path, key) + "' must be a string");
  }

  const json& list(const json& obj, const std::string& path, const std::string& key) const {
    static const json empty = json::array();
    if (!obj.contains(key)) return empty;
    const json& v = obj[key];
    if (!v.is_array()) fail(join(path, key), "'" + join(path, key) + "' must be a list");
    return v;
  }

  template <class F>
  auto wrap(const std::string& path, F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      fail(path, path + ": " + e.what());
    }
  }

 private:
  const Document& doc_;
};

CostModel read_costs(const Reader& r, const json& obj, const std::string& path, CostModel base) {
  std::set<std::string> allowed;
  for (auto f : CostModel::field_names()) allowed.insert(std::string(f));
  r.keys(obj, path, allowed);
  for (const auto& el : obj.items()) base.set(el.key(), r.uint(obj, path, el.key(), 0));
  return base;
}

std::vector<Action> read_body(const Reader& r, const json& obj, const std::string& path) {
  std::vector<Action> body;
  const json& l = r.list(obj, path, "body");
  for (std::size_t i = 0; i < l.size(); ++i) {
    const std::string p = path + ".body." + std::to_string(i);
    if (!l[i].is_string()) r.fail(p, "'" + p + "' must be an action string");
    body.push_back(r.wrap(p, [&] { return parse_action(l[i].get<std::string>()); }));
  }
  return body;
}

RoutingConfig read_routing(const Reader& r, const json& sec, const std::string& path,
                           std::vector<Stimulus>& stimuli) {
  RoutingConfig routing;
  const json& lines = r.list(sec, path, "lines");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string p = path + ".lines." + std::to_string(i);
    const json& l = lines[i];
    r.keys(l, p, {"name", "plic_source", "clic_line", "trigger", "shv", "priority"});
    SourceBinding b;
    b.name = r.string(l, p, "name", std::nullopt);
    if (l.contains("plic_source")) b.plic_source = static_cast<std::uint32_t>(r.uint(l, p, "plic_source", 0));
    if (l.contains("clic_line")) b.clic_line = static_cast<std::uint32_t>(r.uint(l, p, "clic_line", 0));
    b.trigger = r.wrap(p + ".trigger", [&] { return parse_trigger(r.string(l, p, "trigger", "edge")); });
    b.shv = r.boolean(l, p, "shv", false);
    b.clic_priority = static_cast<std::uint8_t>(r.uint(l, p, "priority", 0));
    routing.sources.push_back(b);
  }
  const json& st = r.list(sec, path, "stimuli");
  for (std::size_t i = 0; i < st.size(); ++i) {
    const std::string p = path + ".stimuli." + std::to_string(i);
    r.keys(st[i], p, {"source", "at"});
    Stimulus s{r.string(st[i], p, "source", std::nullopt), r.uint(st[i], p, "at", 0)};
    const bool known = s.source == kSourceMtip || s.source == kSourceMsip ||
                       std::any_of(routing.sources.begin(), routing.sources.end(),
                                   [&](const SourceBinding& b) { return b.name == s.source; });
    if (!known) r.fail(p + ".source", "stimulus source '" + s.source + "' is not in interrupt.lines");
    stimuli.push_back(s);
  }
  return routing;
}

KernelScenario read_kernel(const Reader& r, const json& sec, const json& irq, bool& optimized) {
  KernelScenario ks;
  r.keys(sec, "kernel", {"tasks", "isrs", "isr2_optimized", "horizon"});
  optimized = r.boolean(sec, "kernel", "isr2_optimized", true);
  ks.kernel.isr2_optimized = optimized;
  ks.horizon = r.uint(sec, "kernel", "horizon", ks.horizon);
  const json& tasks = r.list(sec, "kernel", "tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string p = "kernel.tasks." + std::to_string(i);
    const json& t = tasks[i];
    r.keys(t, p, {"name", "priority", "max_activations", "autostart", "body"});
    TaskConfig tc;
    tc.name = r.string(t, p, "name", std::nullopt);
    tc.priority = static_cast<std::uint32_t>(r.uint(t, p, "priority", 1));
    tc.max_activations = static_cast<std::uint32_t>(r.uint(t, p, "max_activations", 1));
    tc.autostart = r.boolean(t, p, "autostart", false);
    tc.body = read_body(r, t, p);
    ks.kernel.tasks.push_back(std::move(tc));
  }
  const json& isrs = r.list(sec, "kernel", "isrs");
  for (std::size_t i = 0; i < isrs.size(); ++i) {
    const std::string p = "kernel.isrs." + std::to_string(i);
    const json& t = isrs[i];
    r.keys(t, p, {"name", "category", "source", "level", "dispatch", "body"});
    IsrConfig ic;
    ic.name = r.string(t, p, "name", std::nullopt);
    ic.category = r.wrap(p + ".category", [&] { return parse_isr_category(r.string(t, p, "category", "ISR2")); });
    ic.source = r.string(t, p, "source", std::nullopt);
    ic.level = static_cast<std::uint8_t>(r.uint(t, p, "level", 1));
    if (t.contains("dispatch")) {
      ic.dispatch = r.wrap(p + ".dispatch", [&] { return parse_isr2_dispatch(r.string(t, p, "dispatch", std::nullopt)); });
    }
    ic.body = read_body(r, t, p);
    ks.kernel.isrs.push_back(std::move(ic));
  }
  ks.routing = read_routing(r, irq, "interrupt", ks.stimuli);
  r.wrap("kernel", [&] {
    ks.kernel.validate();
    return 0;
  });
  for (const IsrConfig& isr : ks.kernel.isrs) {
    const bool known = isr.source == kSourceMtip || isr.source == kSourceMsip ||
                       std::any_of(ks.routing.sources.begin(), ks.routing.sources.end(),
                                   [&](const SourceBinding& b) { return b.name == isr.source; });
    if (!known) r.fail("kernel.isrs", "ISR '" + isr.name + "' source '" + isr.source + "' is not in interrupt.lines");
  }
  return ks;
}

xrce::PingPongConfig read_xrce(const Reader& r, const json& sec) {
  xrce::PingPongConfig c;
  r.keys(sec, "xrce", {"spin_period_us", "hop_us", "hop_jitter_us", "wakeup_jitter_us",
                       "timeout_ms", "ring_slots", "slot_size", "payload_bytes", "rounds",
                       "spin_cost", "doorbell_cost"});
  const std::string p = "xrce";
  c.spin_period_us = r.uint(sec, p, "spin_period_us", c.spin_period_us);
  c.hop_us = r.uint(sec, p, "hop_us", c.hop_us);
  c.hop_jitter_us = r.uint(sec, p, "hop_jitter_us", c.hop_jitter_us);
  c.wakeup_jitter_us = r.uint(sec, p, "wakeup_jitter_us", c.wakeup_jitter_us);
  c.timeout_ms = r.uint(sec, p, "timeout_ms", c.timeout_ms);
  c.ring_slots = r.uint(sec, p, "ring_slots", c.ring_slots);
  c.slot_size = r.uint(sec, p, "slot_size", c.slot_size);
  c.payload_bytes = r.uint(sec, p, "payload_bytes", c.payload_bytes);
  c.rounds = r.uint(sec, p, "rounds", c.rounds);
  c.spin_cost = r.uint(sec, p, "spin_cost", c.spin_cost);
  c.doorbell_cost = r.uint(sec, p, "doorbell_cost", c.doorbell_cost);
  if (c.rounds == 0) r.fail("xrce.rounds", "'xrce.rounds' must be at least 1");
  if (c.ring_slots == 0) r.fail("xrce.ring_slots", "'xrce.ring_slots' must be at least 1");
  if (c.payload_bytes + xrce::kHeaderSize > c.slot_size) {
    r.fail("xrce.slot_size", "'xrce.slot_size' must hold payload_bytes plus a 12-byte header");
  }
  return c;
}

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ScenarioError("line " + std::to_string(e.mark.line + 1) + ": parse error: " + e.msg);
  }
  if (!root.IsMap()) throw ScenarioError("scenario must be a mapping at top level");
  doc.root = convert(root, "", doc.lines);
  return doc;
}

void apply_override(Document& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ScenarioError("override '" + assignment + "' is not of the form key=value");
  }
  const std::string path = assignment.substr(0, eq);
  json value;
  try {
    const YAML::Node n = YAML::Load(assignment.substr(eq + 1));
    std::map<std::string, int> unused;
    value = n.IsNull() ? json(nullptr) : convert(n, path, unused);
  } catch (const YAML::Exception& e) {
    throw ScenarioError("override '" + assignment + "': " + e.msg);
  }
  json* node = &doc.root;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    const bool last = i + 1 == parts.size();
    if (node->is_array()) {
      if (p.find_first_not_of("0123456789") != std::string::npos || p.empty() ||
          std::stoull(p) >= node->size()) {
        throw ScenarioError("override '" + path + "': no list element '" + p + "'");
      }
      node = &(*node)[std::stoull(p)];
    } else {
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) throw ScenarioError("override '" + path + "': '" + p + "' is not a section");
      node = &(*node)[p];
    }
    if (last) *node = value;
  }
}

Scenario build_scenario(const Document& doc, const std::string& default_name) {
  const Reader r(doc);
  const json& root = doc.root;
  r.keys(root, "", {"name", "description", "cost_model", "platforms", "interrupt", "kernel",
                    "xrce", "bench"});
  Scenario s;
  s.name = r.string(root, "", "name", default_name);
  s.description = r.string(root, "", "description", std::string());

  const json empty = json::object();
  const json& costs = root.contains("cost_model") ? root["cost_model"] : empty;
  const CostModel base = read_costs(r, costs, "cost_model", CostModel{});

  const json& irq = root.contains("interrupt") ? root["interrupt"] : empty;
  r.keys(irq, "interrupt", {"mode", "lines", "stimuli"});

  bool optimized = true;
  if (root.contains("kernel")) s.kernel = read_kernel(r, root["kernel"], irq, optimized);
  else if (irq.contains("lines") || irq.contains("stimuli")) {
    r.fail("interrupt", "'interrupt.lines' and 'interrupt.stimuli' need a kernel section");
  }

  const json& plats = r.list(root, "", "platforms");
  if (plats.empty()) {
    PlatformConfig p;
    p.mode = r.wrap("interrupt.mode", [&] {
      return parse_controller_mode(r.string(irq, "interrupt", "mode", "clint_plic"));
    });
    p.name = to_string(p.mode);
    p.isr2_optimized = optimized;
    p.costs = base;
    s.platforms.push_back(p);
  } else if (irq.contains("mode")) {
    r.fail("interrupt.mode", "'interrupt.mode' conflicts with a platforms list; set mode per platform");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < plats.size(); ++i) {
    const std::string p = "platforms." + std::to_string(i);
    const json& o = plats[i];
    r.keys(o, p, {"name", "mode", "isr2_optimized", "mnxti", "cost_model"});
    PlatformConfig pc;
    pc.name = r.string(o, p, "name", std::nullopt);
    if (pc.name.empty() || pc.name.find_first_of(", \t\n\"") != std::string::npos) {
      r.fail(p + ".name", "platform name '" + pc.name + "' must be non-empty without commas, quotes or spaces");
    }
    if (!names.insert(pc.name).second) r.fail(p + ".name", "duplicate platform name '" + pc.name + "'");
    pc.mode = r.wrap(p + ".mode", [&] { return parse_controller_mode(r.string(o, p, "mode", std::nullopt)); });
    pc.isr2_optimized = r.boolean(o, p, "isr2_optimized", optimized);
    pc.mnxti = r.boolean(o, p, "mnxti", true);
    pc.costs = o.contains("cost_model") ? read_costs(r, o["cost_model"], p + ".cost_model", base) : base;
    s.platforms.push_back(pc);
  }

  if (!root.contains("bench")) r.fail("", "missing section 'bench' (bench.seed is required)");
  const json& b = root["bench"];
  r.keys(b, "bench", {"metrics", "runs", "seed", "jitter"});
  if (!b.contains("seed")) r.fail("bench", "missing key 'bench.seed' (required for reproducibility)");
  s.bench.seed = r.uint(b, "bench", "seed", 0);
  s.bench.runs = r.uint(b, "bench", "runs", s.bench.runs);
  if (s.bench.runs == 0) r.fail("bench.runs", "'bench.runs' must be at least 1");
  if (b.contains("jitter")) {
    const json& j = b["jitter"];
    r.keys(j, "bench.jitter", {"lo", "hi"});
    s.bench.phase.lo = r.uint(j, "bench.jitter", "lo", 0);
    s.bench.phase.hi = r.uint(j, "bench.jitter", "hi", s.bench.phase.lo);
    if (s.bench.phase.lo > s.bench.phase.hi) r.fail("bench.jitter", "'bench.jitter.lo' exceeds 'hi'");
  }
  if (!b.contains("metrics") || (b["metrics"].is_string() && b["metrics"] == "all")) {
    s.metrics = bench::rtos_metrics();
  } else {
    const json& ms = r.list(b, "bench", "metrics");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string p = "bench.metrics." + std::to_string(i);
      if (!ms[i].is_string()) r.fail(p, "'" + p + "' must be a metric name");
      const auto id = r.wrap(p, [&] { return bench::parse_metric(ms[i].get<std::string>()); });
      if (std::find(s.metrics.begin(), s.metrics.end(), id) != s.metrics.end()) {
        r.fail(p, "metric '" + ms[i].get<std::string>() + "' listed twice");
      }
      s.metrics.push_back(id);
    }
  }
  if (root.contains("xrce")) s.bench.pingpong = read_xrce(r, root["xrce"]);
  return s;
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides,
                       std::optional<std::uint64_t> seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  Document doc = parse_document(text.str());
  for (const auto& o : overrides) apply_override(doc, o);
  if (seed) apply_override(doc, "bench.seed=" + std::to_string(*seed));
  return build_scenario(doc, std::filesystem::path(path).stem().string());
}

}  // namespace ampsim::cli
