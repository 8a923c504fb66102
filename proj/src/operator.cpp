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

#include "intent/operator.hpp"

#include <algorithm>
#include <cmath>

#include "intent/errors.hpp"
#include "intent/json_util.hpp"

namespace intent {

using nlohmann::json;

namespace {

const char* kind_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::direct: return "direct";
    case OperatorKind::noisy: return "noisy";
    case OperatorKind::intent_switch: return "intent_switch";
    case OperatorKind::idle: return "idle";
  }
  return "direct";
}

OperatorKind parse_kind(const std::string& s) {
  for (auto k : {OperatorKind::direct, OperatorKind::noisy,
                 OperatorKind::intent_switch, OperatorKind::idle}) {
    if (s == kind_name(k)) return k;
  }
  throw ConfigError("operator.kind: unknown kind '" + s + "'");
}

}  // namespace

void OperatorProfile::validate(const Scenario& scenario) const {
  if (kind == OperatorKind::intent_switch && (!switch_tick || !switch_target)) {
    throw ConfigError("operator: intent_switch needs switch_tick and switch_target");
  }
  if (!(noise_sigma >= 0.0)) throw ConfigError("operator.noise_sigma must be >= 0");
  if (!(v_op >= 0.0) || !(k_steer > 0.0)) {
    throw ConfigError("operator: v_op must be >= 0 and k_steer > 0");
  }
  if (kind != OperatorKind::idle && !scenario.find_object(target)) {
    throw ConfigError("operator.target: unknown object '" + target + "'");
  }
  if (switch_target && !scenario.find_object(*switch_target)) {
    throw ConfigError("operator.switch_target: unknown object '" +
                      *switch_target + "'");
  }
  if (accept_policy.kind == AcceptPolicy::Kind::delay &&
      accept_policy.delay_ticks < 0) {
    throw ConfigError("operator.accept_policy: delay must be >= 0");
  }
}

const std::string& OperatorProfile::target_at(int tick) const {
  if (kind == OperatorKind::intent_switch && switch_tick && switch_target &&
      tick >= *switch_tick) {
    return *switch_target;
  }
  return target;
}

OperatorEvent operator_tick(const OperatorProfile& profile, const Pose& robot,
                            const Scenario& scenario, int tick,
                            const OperatorView& view,
                            const CommandLimits& limits, Rng& rng) {
  OperatorEvent ev;
  for (const auto& entry : profile.prompt_schedule) {
    if (entry.tick == tick) ev.prompt = entry.text;
  }
  if (view.phase == Phase::Suggested) {
    switch (profile.accept_policy.kind) {
      case AcceptPolicy::Kind::always:
        ev.decision = Decision::accept;
        break;
      case AcceptPolicy::Kind::never:
        ev.decision = Decision::reject;
        break;
      case AcceptPolicy::Kind::delay:
        if (tick - view.suggested_since >= profile.accept_policy.delay_ticks) {
          ev.decision = Decision::accept;
        }
        break;
    }
  }

  ev.cmd = VelocityCommand{0.0, 0.0};
  if (profile.kind == OperatorKind::idle) return ev;

  const double perturbation =
      profile.kind == OperatorKind::noisy ? profile.noise_sigma * rng.normal()
                                          : 0.0;
  const std::string& target_id = profile.target_at(tick);
  const WorldObject* target = scenario.find_object(target_id);
  if (target == nullptr) return ev;

  const bool assisted = view.phase == Phase::Assisting ||
                        view.phase == Phase::Reached;
  if (view.mode == AssistMode::autonomous && assisted &&
      view.suggested_target == target_id) {
    return ev;  // hands off while the robot drives to our goal
  }
  if (distance(robot.position(), target->position) <= view.reach_radius) {
    return ev;
  }
  const double b = normalize_angle(bearing_to(robot, target->position) +
                                   perturbation);
  ev.cmd = limits.clamp({std::abs(b) < kPi / 4.0 ? profile.v_op : 0.0,
                         profile.k_steer * b});
  return ev;
}

OperatorProfile parse_operator_profile(const json& j,
                                       const std::string& default_target) {
  check_keys<ConfigError>(j,
                          {"kind", "target", "switch_tick", "switch_target",
                           "noise_sigma", "prompt_schedule", "accept_policy",
                           "v_op", "k_steer"},
                          "operator");
  try {
    OperatorProfile p;
    p.kind = parse_kind(j.value("kind", std::string("direct")));
    p.target = j.value("target", default_target);
    if (j.contains("switch_tick")) p.switch_tick = j["switch_tick"].get<int>();
    if (j.contains("switch_target")) {
      p.switch_target = j["switch_target"].get<std::string>();
    }
    p.noise_sigma = j.value("noise_sigma", 0.0);
    p.v_op = j.value("v_op", p.v_op);
    p.k_steer = j.value("k_steer", p.k_steer);
    if (j.contains("prompt_schedule")) {
      for (const auto& e : j["prompt_schedule"]) {
        check_keys<ConfigError>(e, {"tick", "prompt"}, "operator.prompt_schedule");
        p.prompt_schedule.push_back(
            {e.at("tick").get<int>(), e.at("prompt").get<std::string>()});
      }
    }
    if (j.contains("accept_policy")) {
      const auto& a = j["accept_policy"];
      if (a.is_string() && a == "always") {
        p.accept_policy = {AcceptPolicy::Kind::always, 0};
      } else if (a.is_string() && a == "never") {
        p.accept_policy = {AcceptPolicy::Kind::never, 0};
      } else if (a.is_object() && a.contains("delay") && a.size() == 1) {
        p.accept_policy = {AcceptPolicy::Kind::delay, a["delay"].get<int>()};
      } else {
        throw ConfigError(
            "operator.accept_policy: expected \"always\", \"never\" or "
            "{\"delay\": n}");
      }
    }
    return p;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("operator: ") + e.what());
  }
}

json to_json(const OperatorProfile& p) {
  json j = {{"kind", kind_name(p.kind)},
            {"target", p.target},
            {"noise_sigma", p.noise_sigma},
            {"v_op", p.v_op},
            {"k_steer", p.k_steer}};
  if (p.switch_tick) j["switch_tick"] = *p.switch_tick;
  if (p.switch_target) j["switch_target"] = *p.switch_target;
  json sched = json::array();
  for (const auto& e : p.prompt_schedule) {
    sched.push_back({{"tick", e.tick}, {"prompt", e.text}});
  }
  j["prompt_schedule"] = sched;
  switch (p.accept_policy.kind) {
    case AcceptPolicy::Kind::always: j["accept_policy"] = "always"; break;
    case AcceptPolicy::Kind::never: j["accept_policy"] = "never"; break;
    case AcceptPolicy::Kind::delay:
      j["accept_policy"] = {{"delay", p.accept_policy.delay_ticks}};
      break;
  }
  return j;
}

}  // namespace intent
