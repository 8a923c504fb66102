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

#include "intent/service/protocol.hpp"

#include "intent/errors.hpp"
#include "intent/json_util.hpp"

namespace intent::service {

using nlohmann::json;

namespace {

ClientType parse_type(const std::string& s) {
  if (s == "command") return ClientType::command;
  if (s == "prompt") return ClientType::prompt;
  if (s == "decision") return ClientType::decision;
  if (s == "pause") return ClientType::pause;
  if (s == "resume") return ClientType::resume;
  if (s == "reset") return ClientType::reset;
  throw ParseError("message.type: unknown type '" + s + "'");
}

json distribution(const Distribution& d) {
  json j = json::object();
  for (const auto& [k, v] : d) j[k] = v;
  return j;
}

json optional_id(const std::optional<std::string>& s) {
  return s ? json(*s) : json(nullptr);
}

}  // namespace

const char* to_string(ClientType t) {
  switch (t) {
    case ClientType::command: return "command";
    case ClientType::prompt: return "prompt";
    case ClientType::decision: return "decision";
    case ClientType::pause: return "pause";
    case ClientType::resume: return "resume";
    case ClientType::reset: return "reset";
  }
  return "command";
}

ClientMessage parse_client_message(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("message: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("message: expected an object");
  check_keys<ParseError>(
      j, {"session", "seq", "type", "command", "text", "decision", "config"},
      "message");
  ClientMessage m;
  if (!j.contains("session") || !j["session"].is_string()) {
    throw ParseError("message.session: expected a string");
  }
  if (!j.contains("seq") || !j["seq"].is_number_integer()) {
    throw ParseError("message.seq: expected an integer");
  }
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ParseError("message.type: expected a string");
  }
  m.session = j["session"].get<std::string>();
  m.seq = j["seq"].get<std::int64_t>();
  m.type = parse_type(j["type"].get<std::string>());
  switch (m.type) {
    case ClientType::command: {
      const auto& c = j.value("command", json());
      if (!c.is_object() || !c.contains("v") || !c.contains("omega") ||
          !c["v"].is_number() || !c["omega"].is_number()) {
        throw ParseError("message.command: expected {\"v\", \"omega\"}");
      }
      check_keys<ParseError>(c, {"v", "omega"}, "message.command");
      m.command = {c["v"].get<double>(), c["omega"].get<double>()};
      if (!std::isfinite(m.command.v) || !std::isfinite(m.command.omega)) {
        throw ParseError("message.command: non-finite value");
      }
      break;
    }
    case ClientType::prompt:
      if (!j.contains("text") || !j["text"].is_string()) {
        throw ParseError("message.text: expected a string");
      }
      m.text = j["text"].get<std::string>();
      if (m.text.empty()) throw ParseError("message.text: empty prompt");
      break;
    case ClientType::decision:
      if (!j.contains("decision") || !j["decision"].is_string()) {
        throw ParseError("message.decision: expected accept or reject");
      }
      m.decision = parse_decision(j["decision"].get<std::string>());
      break;
    case ClientType::reset:
      if (j.contains("config")) {
        if (!j["config"].is_object()) {
          throw ParseError("message.config: expected an object");
        }
        m.config = j["config"];
      }
      break;
    case ClientType::pause:
    case ClientType::resume:
      break;
  }
  return m;
}

json to_json(const ClientMessage& m) {
  json j = {{"session", m.session}, {"seq", m.seq}, {"type", to_string(m.type)}};
  switch (m.type) {
    case ClientType::command:
      j["command"] = {{"v", m.command.v}, {"omega", m.command.omega}};
      break;
    case ClientType::prompt:
      j["text"] = m.text;
      break;
    case ClientType::decision:
      j["decision"] = to_string(m.decision);
      break;
    case ClientType::reset:
      if (m.config) j["config"] = *m.config;
      break;
    default:
      break;
  }
  return j;
}

std::string server_message(const std::string& session, std::uint64_t seq,
                           std::string_view type, json payload) {
  json j = {{"session", session}, {"seq", seq}, {"type", type}};
  j[std::string(type)] = std::move(payload);
  return j.dump();
}

json event_json(const Transition& t) {
  return {{"tick", t.tick},
          {"from", to_string(t.from)},
          {"to", to_string(t.to)},
          {"target", optional_id(t.target)},
          {"reason", t.reason}};
}

json tick_state_json(const Simulation& sim, bool paused) {
  const BeliefState& b = sim.belief();
  const AssistState& a = sim.assist();
  const Pose& p = sim.pose();
  json s;
  s["tick"] = sim.tick();
  s["time_s"] = sim.tick() / 10.0;
  s["paused"] = paused;
  s["done"] = sim.done();
  s["phase"] = to_string(a.phase);
  s["pose"] = {{"x", p.x}, {"y", p.y}, {"heading", p.heading}};
  s["fov"] = {{"radius", sim.config().fov.fov_radius},
              {"halfangle", sim.config().fov.fov_halfangle}};
  s["belief"] = {{"nav", distribution(b.nav)},
                 {"man", distribution(b.man)},
                 {"posterior", distribution(b.posterior)},
                 {"top", {{"id", b.top_id}, {"p", b.top_p}}},
                 {"pruned", b.pruned},
                 {"prompt_version", b.prompt_version}};
  json cooldown = json::object();
  for (const auto& [id, until] : a.cooldown_until) {
    if (until > sim.tick()) cooldown[id] = until;
  }
  s["assist"] = {{"phase", to_string(a.phase)},
                 {"target", optional_id(a.committed_target)},
                 {"dwell_count", a.dwell_count},
                 {"dwell_target", a.dwell_target},
                 {"commit_tick", a.commit_tick ? json(*a.commit_tick) : json()},
                 {"reach_tick", a.reach_tick ? json(*a.reach_tick) : json()},
                 {"cooldown_until", cooldown}};
  json tracks = json::array();
  for (const auto& [id, t] : sim.memory().tracks) {
    tracks.push_back({{"id", id},
                      {"label", t.descriptor.label},
                      {"category", t.descriptor.category},
                      {"position", {t.position_estimate.x, t.position_estimate.y}},
                      {"confidence", t.smoothed_confidence},
                      {"last_seen_tick", t.last_seen_tick}});
  }
  s["tracks"] = std::move(tracks);
  if (auto prior = sim.prior()) {
    s["prior"] = {{"prompt_version", prior->prompt_version},
                  {"object_weights", distribution(prior->object_weights)},
                  {"area_weights", distribution(prior->area_weights)},
                  {"pruned", prior->pruned}};
  } else {
    s["prior"] = nullptr;
  }
  json prompt = {{"text", sim.prompt_text()}, {"version", sim.prompt_version()}};
  if (sim.query()) {
    prompt["kind"] = to_string(sim.query()->kind);
  } else {
    prompt["kind"] = sim.prompt_text().empty() ? json() : json("unparsable");
  }
  s["prompt"] = std::move(prompt);
  s["backend_failed"] = sim.last().backend_failed;
  return s;
}

}  // namespace intent::service
