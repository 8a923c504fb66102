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

#include "intent/assistance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "intent/errors.hpp"
#include "intent/world.hpp"

namespace intent {

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Scan: return "Scan";
    case Phase::Inference: return "Inference";
    case Phase::Suggested: return "Suggested";
    case Phase::Assisting: return "Assisting";
    case Phase::Reached: return "Reached";
    case Phase::Aborted: return "Aborted";
  }
  return "Scan";
}

const char* to_string(CommitPolicy p) {
  return p == CommitPolicy::auto_commit ? "auto_commit" : "require_accept";
}

const char* to_string(AssistMode m) {
  return m == AssistMode::autonomous ? "autonomous" : "shared";
}

const char* to_string(Decision d) {
  return d == Decision::accept ? "accept" : "reject";
}

Phase parse_phase(std::string_view s) {
  for (Phase p : {Phase::Scan, Phase::Inference, Phase::Suggested,
                  Phase::Assisting, Phase::Reached, Phase::Aborted}) {
    if (s == to_string(p)) return p;
  }
  throw ParseError("unknown phase '" + std::string(s) + "'");
}

CommitPolicy parse_policy(std::string_view s) {
  if (s == "auto_commit") return CommitPolicy::auto_commit;
  if (s == "require_accept") return CommitPolicy::require_accept;
  throw ConfigError("unknown commitment policy '" + std::string(s) + "'");
}

AssistMode parse_mode(std::string_view s) {
  if (s == "autonomous") return AssistMode::autonomous;
  if (s == "shared") return AssistMode::shared;
  throw ConfigError("unknown assistance mode '" + std::string(s) + "'");
}

Decision parse_decision(std::string_view s) {
  if (s == "accept") return Decision::accept;
  if (s == "reject") return Decision::reject;
  throw ParseError("unknown decision '" + std::string(s) + "'");
}

void CommitmentConfig::validate() const {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("theta must be in (0, 1)");
  }
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (!(blend_gain >= 0.0 && blend_gain <= 1.0)) {
    throw std::invalid_argument("blend_gain must be in [0, 1]");
  }
  if (!(override_threshold >= 0.0)) {
    throw std::invalid_argument("override_threshold must be >= 0");
  }
  if (grasp_proxy_ticks < 0) {
    throw std::invalid_argument("grasp_proxy_ticks must be >= 0");
  }
}

void ControllerParams::validate() const {
  if (!(k_v > 0.0) || !(k_omega > 0.0) || !(align_tolerance > 0.0)) {
    throw std::invalid_argument("controller gains must be positive");
  }
}

AssistState commitment_step(const AssistState& fsm, const BeliefState& belief,
                            const FsmInput& in, const CommitmentConfig& cfg,
                            std::vector<Transition>* log) {
  AssistState s = fsm;
  auto go = [&](Phase to, const char* reason) {
    if (log) log->push_back({in.tick, s.phase, to, s.committed_target, reason});
    s.phase = to;
  };
  auto posterior_of = [&](const std::string& id) {
    auto it = belief.posterior.find(id);
    return it == belief.posterior.end() ? 0.0 : it->second;
  };

  switch (s.phase) {
    case Phase::Scan:
      if (in.scan_complete) go(Phase::Inference, "scan_complete");
      break;

    case Phase::Aborted:
      go(Phase::Inference, "resume_inference");
      break;

    case Phase::Inference: {
      const std::string& top = belief.top_id;
      auto cd = s.cooldown_until.find(top);
      const bool cooling = cd != s.cooldown_until.end() && in.tick < cd->second;
      if (!top.empty() && belief.top_p > cfg.theta && !cooling) {
        if (top == s.dwell_target) {
          ++s.dwell_count;
        } else {
          s.dwell_target = top;
          s.dwell_count = 1;
        }
      } else {
        s.dwell_count = 0;
        s.dwell_target.clear();
      }
      if (s.dwell_count >= cfg.tau) {
        s.committed_target = s.dwell_target;
        s.dwell_count = 0;
        s.dwell_target.clear();
        go(Phase::Suggested, "threshold_dwell");
        if (cfg.policy == CommitPolicy::auto_commit) {
          s.commit_tick = in.tick;
          go(Phase::Assisting, "auto_commit");
        }
      }
      break;
    }

    case Phase::Suggested:
      if (!belief.posterior.count(*s.committed_target)) {
        go(Phase::Inference, "target_pruned");
        s.committed_target.reset();
      } else if (in.decision == Decision::accept) {
        s.commit_tick = in.tick;
        go(Phase::Assisting, "operator_accept");
      } else if (in.decision == Decision::reject) {
        s.cooldown_until[*s.committed_target] = in.tick + cfg.cooldown();
        go(Phase::Inference, "operator_reject");
        s.committed_target.reset();
      }
      break;

    case Phase::Assisting:
      if (!s.reach_tick) {
        if (in.operator_override) {
          go(Phase::Aborted, "operator_override");
          s.committed_target.reset();
          s.commit_tick.reset();
        } else if (belief.top_id != *s.committed_target &&
                   posterior_of(*s.committed_target) < cfg.theta / 2.0) {
          go(Phase::Aborted, "belief_drop");
          s.committed_target.reset();
          s.commit_tick.reset();
        } else if (in.reach_event) {
          s.reach_tick = in.tick;
          s.hold_ticks = 0;
          if (cfg.grasp_proxy_ticks == 0) go(Phase::Reached, "grasp_complete");
        }
      } else if (++s.hold_ticks >= cfg.grasp_proxy_ticks) {
        go(Phase::Reached, "grasp_complete");
      }
      break;

    case Phase::Reached:
      break;
  }
  return s;
}

bool is_override(AssistMode mode, const std::optional<VelocityCommand>& op,
                 const VelocityCommand& assist, double threshold) {
  if (!op) return false;
  const bool active =
      std::abs(op->v) > threshold || std::abs(op->omega) > threshold;
  if (!active) return false;
  if (mode == AssistMode::autonomous) return true;
  return op->v * assist.v + op->omega * assist.omega < 0.0;
}

ControlOutput autonomous_controller(const Pose& robot, Vec2 target,
                                    double reach_radius,
                                    const ControllerParams& params,
                                    const CommandLimits& limits) {
  const double d = distance(robot.position(), target);
  if (d <= reach_radius) return {{0.0, 0.0}, true};
  const double b = bearing_to(robot, target);
  if (std::abs(b) > params.align_tolerance) {
    return {limits.clamp({0.0, params.k_omega * b}), false};
  }
  return {limits.clamp({params.k_v * d, params.k_omega * b}), false};
}

double blend_authority(double p_star, const CommitmentConfig& cfg) {
  return cfg.blend_gain *
         std::clamp((p_star - cfg.theta) / (1.0 - cfg.theta), 0.0, 1.0);
}

VelocityCommand shared_autonomy_blend(const VelocityCommand& operator_cmd,
                                      const VelocityCommand& assist_cmd,
                                      double p_star,
                                      const CommitmentConfig& cfg,
                                      const CommandLimits& limits) {
  const double a = blend_authority(p_star, cfg);
  return limits.clamp({(1.0 - a) * operator_cmd.v + a * assist_cmd.v,
                       (1.0 - a) * operator_cmd.omega + a * assist_cmd.omega});
}

}  // namespace intent
