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

#ifndef INTENT_ASSISTANCE_HPP_
#define INTENT_ASSISTANCE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intent/belief.hpp"
#include "intent/geometry.hpp"

namespace intent {

enum class Phase { Scan, Inference, Suggested, Assisting, Reached, Aborted };
enum class CommitPolicy { auto_commit, require_accept };
enum class AssistMode { autonomous, shared };
enum class Decision { accept, reject };

const char* to_string(Phase p);
const char* to_string(CommitPolicy p);
const char* to_string(AssistMode m);
const char* to_string(Decision d);
Phase parse_phase(std::string_view s);
CommitPolicy parse_policy(std::string_view s);
AssistMode parse_mode(std::string_view s);
Decision parse_decision(std::string_view s);

struct CommitmentConfig {
  double theta = 0.85;
  int tau = 10;
  CommitPolicy policy = CommitPolicy::auto_commit;
  AssistMode mode = AssistMode::autonomous;
  double blend_gain = 1.0;
  int cooldown_ticks = -1;           // < 0 means 2 * tau
  double override_threshold = 0.1;   // |v| or |omega| above this overrides
  int grasp_proxy_ticks = 20;

  void validate() const;
  int cooldown() const { return cooldown_ticks < 0 ? 2 * tau : cooldown_ticks; }
};

struct AssistState {
  Phase phase = Phase::Scan;
  std::optional<std::string> committed_target;
  int dwell_count = 0;
  std::string dwell_target;
  std::optional<int> commit_tick;
  std::optional<int> reach_tick;
  int hold_ticks = 0;
  // Rejected suggestions: id -> first tick it may be suggested again.
  std::map<std::string, int> cooldown_until;

  friend bool operator==(const AssistState&, const AssistState&) = default;
};

struct Transition {
  int tick = 0;
  Phase from = Phase::Scan;
  Phase to = Phase::Scan;
  std::optional<std::string> target;
  std::string reason;
};

struct FsmInput {
  int tick = 0;
  bool scan_complete = false;
  std::optional<Decision> decision;
  bool operator_override = false;  // see is_override
  bool reach_event = false;
};

// One tick of the commitment rule; call after the belief update. Transitions
// taken are appended to `log` when given.
AssistState commitment_step(const AssistState& fsm, const BeliefState& belief,
                            const FsmInput& in, const CommitmentConfig& cfg,
                            std::vector<Transition>* log = nullptr);

// Autonomous mode: any operator command above the threshold. Shared mode: a
// command above the threshold that opposes the assistive command.
bool is_override(AssistMode mode, const std::optional<VelocityCommand>& op,
                 const VelocityCommand& assist, double threshold);

struct ControllerParams {
  double k_v = 0.8;
  double k_omega = 1.5;
  double align_tolerance = 0.2;  // rad

  void validate() const;
};

struct ControlOutput {
  VelocityCommand cmd;
  bool reach_event = false;
};

// Rotate-then-drive toward `target`; reach_event when within reach_radius.
ControlOutput autonomous_controller(const Pose& robot, Vec2 target,
                                    double reach_radius,
                                    const ControllerParams& params,
                                    const CommandLimits& limits);

double blend_authority(double p_star, const CommitmentConfig& cfg);

VelocityCommand shared_autonomy_blend(const VelocityCommand& operator_cmd,
                                      const VelocityCommand& assist_cmd,
                                      double p_star,
                                      const CommitmentConfig& cfg,
                                      const CommandLimits& limits);

}  // namespace intent

#endif  // INTENT_ASSISTANCE_HPP_
