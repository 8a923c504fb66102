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

#ifndef INTENT_OPERATOR_HPP_
#define INTENT_OPERATOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "intent/assistance.hpp"
#include "intent/geometry.hpp"
#include "intent/rng.hpp"
#include "intent/world.hpp"

namespace intent {

enum class OperatorKind { direct, noisy, intent_switch, idle };

struct AcceptPolicy {
  enum class Kind { always, never, delay } kind = Kind::always;
  int delay_ticks = 0;

  friend bool operator==(const AcceptPolicy&, const AcceptPolicy&) = default;
};

struct PromptEntry {
  int tick = 0;
  std::string text;
};

struct OperatorProfile {
  OperatorKind kind = OperatorKind::direct;
  std::string target;
  std::optional<int> switch_tick;
  std::optional<std::string> switch_target;
  double noise_sigma = 0.0;  // rad
  std::vector<PromptEntry> prompt_schedule;
  AcceptPolicy accept_policy;
  double v_op = 0.8;
  double k_steer = 1.5;

  void validate(const Scenario& scenario) const;
  const std::string& target_at(int tick) const;
};

struct OperatorEvent {
  std::optional<VelocityCommand> cmd;
  std::optional<std::string> prompt;
  std::optional<Decision> decision;
};

// What the scripted operator can see of the system this tick.
struct OperatorView {
  Phase phase = Phase::Scan;
  AssistMode mode = AssistMode::autonomous;
  std::optional<std::string> suggested_target;
  int suggested_since = 0;
  double reach_radius = 0.6;
};

// Goal-directed teleoperation toward the operator's current target. The
// operator stands off once within reach_radius, and lets go of the controls
// while the system autonomously assists toward that same target.
OperatorEvent operator_tick(const OperatorProfile& profile, const Pose& robot,
                            const Scenario& scenario, int tick,
                            const OperatorView& view,
                            const CommandLimits& limits, Rng& rng);

OperatorProfile parse_operator_profile(const nlohmann::json& j,
                                       const std::string& default_target);
nlohmann::json to_json(const OperatorProfile& p);

}  // namespace intent

#endif  // INTENT_OPERATOR_HPP_
