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

#include "intent/simulation.hpp"

#include <chrono>

#include "intent/errors.hpp"
#include "intent/external_scorer.hpp"
#include "intent/prompt.hpp"

namespace intent {

namespace {

bool same_track_set(const TrackMemory& a, const TrackMemory& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.tracks.begin();
  for (auto ib = b.tracks.begin(); ib != b.tracks.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
  }
  return true;
}

double posterior_of(const BeliefState& b, const std::string& id) {
  auto it = b.posterior.find(id);
  return it == b.posterior.end() ? 0.0 : it->second;
}

}  // namespace

Simulation::Simulation(TrialConfig cfg, std::shared_ptr<const Scenario> scenario,
                       std::shared_ptr<const Ontology> ontology,
                       std::shared_ptr<ScorerBackend> backend, ScoringMode mode)
    : cfg_(std::move(cfg)),
      scenario_(std::move(scenario)),
      ontology_(std::move(ontology)),
      backend_(cfg_.backend == BackendKind::disabled ? nullptr
                                                     : std::move(backend)),
      mode_(mode),
      perception_rng_(Rng::stream(cfg_.seed, "perception")),
      scan_(cfg_.fov.omega_scan) {
  validate(cfg_, *scenario_);
  pose_ = draw_start_pose(*scenario_, cfg_.seed, cfg_.randomize_start);
  if (!cfg_.prompt.empty()) set_prompt(cfg_.prompt);
}

Simulation::~Simulation() {
  if (inflight_.valid()) inflight_.wait();
}

bool Simulation::done() const {
  return assist_.phase == Phase::Reached || tick_ >= cfg_.max_ticks;
}

OperatorView Simulation::operator_view() const {
  OperatorView v;
  v.phase = assist_.phase;
  v.mode = cfg_.commitment.mode;
  v.suggested_target = assist_.committed_target;
  v.suggested_since = suggested_since_;
  v.reach_radius = scenario_->reach_radius;
  return v;
}

void Simulation::set_prompt(const std::string& text) {
  prompt_text_ = text;
  ++prompt_version_;
  try {
    query_ = parse_prompt(text, *ontology_, scenario_->areas);
  } catch (const UnparsablePrompt&) {
    query_.reset();
  }
  query_dirty_ = true;
}

void Simulation::publish_prior(SemanticPrior prior) {
  prior_ = std::make_shared<const SemanticPrior>(std::move(prior));
  last_.prior_changed = true;
  if (prior_active(prior_.get(), cfg_.belief) && !belief_.posterior.empty()) {
    belief_ = reconcile_prior(belief_, *prior_, *scenario_, memory_,
                              cfg_.semantic.epsilon);
  }
}

void Simulation::refresh_prior(bool memory_changed, bool track_set_changed) {
  if (!backend_ || prompt_version_ == 0) return;

  if (mode_ == ScoringMode::asynchronous && inflight_.valid() &&
      inflight_.wait_for(std::chrono::seconds(0)) == std::future_status::ready) {
    const int version = inflight_version_;
    try {
      SemanticPrior p = inflight_.get();
      // Results for a superseded prompt are dropped.
      if (version == prompt_version_) publish_prior(std::move(p));
    } catch (const BackendUnavailable&) {
      backend_failed_ = true;
      last_.backend_failed = true;
    }
  }

  const bool wanted = backend_->deterministic()
                          ? memory_changed
                          : track_set_changed;
  if (wanted) query_dirty_ = true;
  if (!query_dirty_ || memory_.empty()) return;

  if (mode_ == ScoringMode::synchronous) {
    query_dirty_ = false;
    try {
      ScoringContext ctx{*scenario_, *ontology_, cfg_.semantic.near_radius};
      publish_prior(score_round(query_, memory_, *backend_, cfg_.semantic, ctx,
                                prompt_version_));
      backend_failed_ = false;
    } catch (const BackendUnavailable&) {
      // Keep the previous prior; rescoring is retried on the next trigger.
      backend_failed_ = true;
      last_.backend_failed = true;
    }
    return;
  }

  if (inflight_.valid()) return;  // one request at a time
  query_dirty_ = false;
  inflight_version_ = prompt_version_;
  inflight_ = std::async(
      std::launch::async,
      [backend = backend_, scenario = scenario_, ontology = ontology_,
       query = query_, memory = memory_, params = cfg_.semantic,
       version = prompt_version_]() {
        ScoringContext ctx{*scenario, *ontology, params.near_radius};
        return score_round(query, memory, *backend, params, ctx, version);
      });
}

const TickRecord& Simulation::step(const TickInput& in) {
  const int t = tick_;
  last_ = TickRecord{};
  last_.tick = t;
  last_.pose = pose_;
  last_.operator_cmd = in.cmd;

  if (in.prompt && *in.prompt != prompt_text_) set_prompt(*in.prompt);

  const auto detections = sense(*scenario_, *ontology_, pose_, cfg_.fov,
                                cfg_.noise, perception_rng_);
  TrackMemory next = integrate(memory_, detections, t);
  const bool memory_changed = !(next == memory_);
  const bool track_set_changed = !same_track_set(next, memory_);
  memory_ = std::move(next);

  refresh_prior(memory_changed, track_set_changed);
  const SemanticPrior* prior =
      prior_active(prior_.get(), cfg_.belief) ? prior_.get() : nullptr;

  bool scan_complete = false;
  bool override_event = false;
  bool reach_event = false;
  VelocityCommand executed{0.0, 0.0};
  const VelocityCommand op = in.cmd.value_or(VelocityCommand{0.0, 0.0});

  if (assist_.phase == Phase::Scan) {
    belief_ = init_belief(*scenario_, memory_, prior, cfg_.belief);
    const auto scan_cmd = scan_.command(t);
    scan_complete = !scan_cmd.has_value();
    executed = scan_cmd.value_or(VelocityCommand{0.0, 0.0});
  } else {
    last_.likelihood_update = true;
    last_.nav_L = nav_likelihood(pose_, op, scenario_->areas, cfg_.belief);
    if (!memory_.empty()) {
      last_.man_L = std::abs(op.v) < cfg_.belief.u_min
                        ? uniform_likelihood(memory_)
                        : manip_likelihood(pose_, memory_, cfg_.belief);
    }
    belief_ = update_belief(belief_, last_.nav_L, last_.man_L, prior,
                            *scenario_, memory_, cfg_.belief);

    executed = cfg_.limits.clamp(op);
    if (assist_.phase == Phase::Assisting && assist_.committed_target) {
      const Track* target = memory_.find(*assist_.committed_target);
      if (target != nullptr) {
        const ControlOutput ctrl = autonomous_controller(
            pose_, target->position_estimate, scenario_->reach_radius,
            cfg_.controller, cfg_.limits);
        reach_event = ctrl.reach_event;
        override_event = is_override(cfg_.commitment.mode, in.cmd, ctrl.cmd,
                                     cfg_.commitment.override_threshold);
        if (cfg_.commitment.mode == AssistMode::autonomous) {
          executed = override_event ? cfg_.limits.clamp(op) : ctrl.cmd;
        } else {
          executed = shared_autonomy_blend(
              op, ctrl.cmd, posterior_of(belief_, *assist_.committed_target),
              cfg_.commitment, cfg_.limits);
        }
      }
    }
  }
  belief_.tick = t;

  FsmInput fin;
  fin.tick = t;
  fin.scan_complete = scan_complete;
  fin.decision = in.decision;
  fin.operator_override = override_event;
  fin.reach_event = reach_event;
  assist_ = commitment_step(assist_, belief_, fin, cfg_.commitment,
                            &last_.transitions);
  for (const auto& tr : last_.transitions) {
    if (tr.to == Phase::Suggested) suggested_since_ = t;
  }

  pose_ = step_kinematics(pose_, executed, kTickSeconds, cfg_.limits);

  last_.executed = executed;
  last_.belief = belief_;
  last_.prior = prior_;
  last_.assist = assist_;
  last_.reach_event = reach_event;
  last_.override_event = override_event;
  ++tick_;
  return last_;
}

Pose draw_start_pose(const Scenario& scenario, std::uint64_t seed,
                     bool randomize) {
  if (!randomize || scenario.start_region.empty()) {
    Pose p = scenario.robot_start;
    if (randomize) {
      Rng rng = Rng::stream(seed, "harness");
      p.heading = kPi - kTwoPi * rng.uniform();
    }
    return p;
  }
  Rng rng = Rng::stream(seed, "harness");
  const auto& poly = scenario.start_region;
  Vec2 lo = poly.front();
  Vec2 hi = poly.front();
  for (const auto& v : poly) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Vec2 p{lo.x + (hi.x - lo.x) * rng.uniform(),
                 lo.y + (hi.y - lo.y) * rng.uniform()};
    if (point_in_polygon(p, poly)) {
      return Pose{p.x, p.y, kPi - kTwoPi * rng.uniform()};
    }
  }
  throw ConfigError("start region: could not sample a start pose");
}

std::shared_ptr<ScorerBackend> make_backend(const TrialConfig& cfg) {
  switch (cfg.backend) {
    case BackendKind::mock:
      return std::make_shared<MockScorer>();
    case BackendKind::external:
      return std::make_shared<ExternalScorer>(cfg.endpoint, cfg.semantic.epsilon);
    case BackendKind::disabled:
      return nullptr;
  }
  return nullptr;
}

}  // namespace intent
