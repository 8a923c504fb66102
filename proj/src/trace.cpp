// Copyright 2026 The intentsim Authors.
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

#include "intent/trace.hpp"

#include <fmt/format.h>

#include "json.hpp"

#include "intent/errors.hpp"

namespace intent {

using nlohmann::json;

namespace {

std::string quoted(const std::string& s) { return json(s).dump(); }

void append_distribution(std::string& out, const Distribution& d) {
  out += '{';
  bool first = true;
  for (const auto& [k, v] : d) {
    if (!first) out += ',';
    first = false;
    out += quoted(k);
    out += ':';
    out += format_number(v);
  }
  out += '}';
}

std::string optional_string(const std::optional<std::string>& s) {
  return s ? quoted(*s) : std::string("null");
}

bool reached_at(const TickRecord& r) {
  return r.assist.reach_tick && *r.assist.reach_tick == r.tick;
}

Distribution read_distribution(const json& j) {
  Distribution d;
  for (const auto& [k, v] : j.items()) d[k] = v.get<double>();
  return d;
}

std::optional<std::string> read_optional(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.12e}", x); }

Trace make_trace(const TraceHeader& header,
                 const std::vector<TickRecord>& records) {
  Trace t;
  t.header = header;
  for (const auto& r : records) {
    t.ticks.push_back({r.tick, r.belief.top_id, r.belief.top_p, r.assist.phase,
                       r.assist.committed_target});
    t.transitions.insert(t.transitions.end(), r.transitions.begin(),
                         r.transitions.end());
    if (reached_at(r)) t.reach_ticks.push_back(r.tick);
  }
  return t;
}

void write_trace(std::ostream& out, const TraceHeader& h,
                 const std::vector<TickRecord>& records) {
  out << fmt::format(
      "{{\"type\":\"header\",\"scenario\":{},\"arm\":{},\"prompt\":{},"
      "\"true_target\":{},\"seed\":{},\"theta\":{},\"dt\":{}}}\n",
      quoted(h.scenario), quoted(h.arm), quoted(h.prompt),
      quoted(h.true_target), h.seed, format_number(h.theta),
      format_number(h.dt));
  std::string line;
  for (const auto& r : records) {
    const auto& b = r.belief;
    line = fmt::format("{{\"type\":\"tick\",\"tick\":{},\"phase\":\"{}\",",
                       r.tick, to_string(r.assist.phase));
    line += fmt::format("\"pose\":[{},{},{}],", format_number(r.pose.x),
                        format_number(r.pose.y), format_number(r.pose.heading));
    line += fmt::format("\"executed\":[{},{}],", format_number(r.executed.v),
                        format_number(r.executed.omega));
    line += "\"nav\":";
    append_distribution(line, b.nav);
    line += ",\"man\":";
    append_distribution(line, b.man);
    line += ",\"posterior\":";
    append_distribution(line, b.posterior);
    line += fmt::format(",\"top\":{{\"id\":{},\"p\":{}}},\"pruned\":[",
                        quoted(b.top_id), format_number(b.top_p));
    bool first = true;
    for (const auto& id : b.pruned) {
      if (!first) line += ',';
      first = false;
      line += quoted(id);
    }
    line += fmt::format("],\"target\":{},\"prompt_version\":{}}}\n",
                        optional_string(r.assist.committed_target),
                        b.prompt_version);
    out << line;
    for (const auto& tr : r.transitions) {
      out << fmt::format(
          "{{\"type\":\"transition\",\"tick\":{},\"from\":\"{}\","
          "\"phase\":\"{}\",\"target\":{},\"reason\":{}}}\n",
          tr.tick, to_string(tr.from), to_string(tr.to),
          optional_string(tr.target), quoted(tr.reason));
    }
    if (reached_at(r)) {
      out << fmt::format("{{\"type\":\"reach\",\"tick\":{}}}\n", r.tick);
    }
  }
}

Trace read_trace(std::istream& in) {
  Trace t;
  bool have_header = false;
  for_each_line(in, [&](const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "header") {
      t.header.scenario = j.at("scenario").get<std::string>();
      t.header.arm = j.at("arm").get<std::string>();
      t.header.prompt = j.at("prompt").get<std::string>();
      t.header.true_target = j.at("true_target").get<std::string>();
      t.header.seed = j.at("seed").get<std::uint64_t>();
      t.header.theta = j.at("theta").get<double>();
      t.header.dt = j.at("dt").get<double>();
      have_header = true;
    } else if (type == "tick") {
      t.ticks.push_back({j.at("tick").get<int>(),
                         j.at("top").at("id").get<std::string>(),
                         j.at("top").at("p").get<double>(),
                         parse_phase(j.at("phase").get<std::string>()),
                         read_optional(j.at("target"))});
    } else if (type == "transition") {
      t.transitions.push_back({j.at("tick").get<int>(),
                               parse_phase(j.at("from").get<std::string>()),
                               parse_phase(j.at("phase").get<std::string>()),
                               read_optional(j.at("target")),
                               j.at("reason").get<std::string>()});
    } else if (type == "reach") {
      t.reach_ticks.push_back(j.at("tick").get<int>());
    } else {
      throw ParseError("trace: unknown line type '" + type + "'");
    }
  });
  if (!have_header) throw ParseError("trace: missing header line");
  return t;
}

std::vector<TraceTickDetail> read_trace_details(std::istream& in) {
  std::vector<TraceTickDetail> out;
  for_each_line(in, [&](const json& j) {
    if (j.at("type").get<std::string>() != "tick") return;
    TraceTickDetail d;
    d.tick = j.at("tick").get<int>();
    d.nav = read_distribution(j.at("nav"));
    d.man = read_distribution(j.at("man"));
    d.posterior = read_distribution(j.at("posterior"));
    for (const auto& id : j.at("pruned")) d.pruned.insert(id.get<std::string>());
    d.top_id = j.at("top").at("id").get<std::string>();
    d.top_p = j.at("top").at("p").get<double>();
    d.phase = parse_phase(j.at("phase").get<std::string>());
    d.target = read_optional(j.at("target"));
    d.prompt_version = j.at("prompt_version").get<int>();
    out.push_back(std::move(d));
  });
  return out;
}

}  // namespace intent
