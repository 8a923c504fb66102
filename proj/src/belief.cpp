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

#include "intent/belief.hpp"

#include <cmath>
#include <stdexcept>

#include "intent/errors.hpp"

namespace intent {

namespace {

constexpr double kUnderflow = 1e-300;

double safe_bearing(const Pose& robot, Vec2 target) {
  const Vec2 d = target - robot.position();
  if (d.x == 0.0 && d.y == 0.0) return 0.0;
  return bearing_to(robot, target);
}

// Normalises in place; returns false (and leaves d untouched) when the mass
// is unusable.
bool normalize(Distribution& d) {
  double total = 0.0;
  for (const auto& [k, v] : d) total += v;
  if (!(total >= kUnderflow) || !std::isfinite(total)) return false;
  for (auto& [k, v] : d) v /= total;
  return true;
}

void fill_uniform(Distribution& d) {
  for (auto& [k, v] : d) v = 1.0 / static_cast<double>(d.size());
}

// Prior weight of a track; tracks the prior has not scored yet get the
// uniform share.
double object_weight(const SemanticPrior& prior, const std::string& id,
                     std::size_t n_tracks) {
  auto it = prior.object_weights.find(id);
  if (it != prior.object_weights.end()) return it->second;
  return 1.0 / static_cast<double>(n_tracks);
}

double area_weight(const SemanticPrior& prior, const std::string& id,
                   std::size_t n_areas) {
  auto it = prior.area_weights.find(id);
  if (it != prior.area_weights.end()) return it->second;
  return 1.0 / static_cast<double>(n_areas);
}

}  // namespace

void BeliefParams::validate() const {
  if (!(kappa_nav > 0.0) || !(sigma_nav > 0.0) || !(kappa_man > 0.0) ||
      !(sigma_d > 0.0) || !(u_min > 0.0)) {
    throw std::invalid_argument("belief parameters must be positive");
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must be in (0, 1]");
  }
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
}

double total_mass(const Distribution& d) {
  double total = 0.0;
  for (const auto& [k, v] : d) total += v;
  return total;
}

void recompute_posterior(BeliefState& state, const Scenario& scenario,
                         const TrackMemory& memory) {
  state.posterior.clear();
  for (const auto& [id, m] : state.man) {
    double nav_factor = 1.0;
    if (const Track* t = memory.find(id)) {
      if (auto a = area_of(t->position_estimate, scenario.areas)) {
        auto it = state.nav.find(*a);
        if (it != state.nav.end()) nav_factor = it->second;
      }
    }
    state.posterior[id] = nav_factor * m;
  }
  if (!state.posterior.empty() && !normalize(state.posterior)) {
    fill_uniform(state.posterior);
    state.underflow = true;
  }
  state.top_id.clear();
  state.top_p = 0.0;
  for (const auto& [id, p] : state.posterior) {
    if (state.top_id.empty() || p > state.top_p) {
      state.top_id = id;
      state.top_p = p;
    }
  }
}

BeliefState init_belief(const Scenario& scenario, const TrackMemory& memory,
                        const SemanticPrior* prior, const BeliefParams& params) {
  const bool active = prior_active(prior, params);
  BeliefState s;
  s.prompt_version = prior ? prior->prompt_version : 0;
  for (const auto& a : scenario.areas) {
    s.nav[a.id] =
        active ? std::pow(area_weight(*prior, a.id, scenario.areas.size()),
                          params.gamma)
               : 1.0;
  }
  if (!normalize(s.nav)) fill_uniform(s.nav);
  if (active) s.pruned = prior->pruned;
  for (const auto& [id, t] : memory.tracks) {
    if (s.pruned.count(id)) continue;
    s.man[id] = active ? std::pow(object_weight(*prior, id, memory.size()),
                                  params.gamma)
                       : 1.0;
  }
  if (!s.man.empty() && !normalize(s.man)) fill_uniform(s.man);
  recompute_posterior(s, scenario, memory);
  return s;
}

Distribution uniform_likelihood(std::span<const Area> areas) {
  Distribution d;
  for (const auto& a : areas) d[a.id] = 1.0;
  return d;
}

Distribution uniform_likelihood(const TrackMemory& memory) {
  Distribution d;
  for (const auto& [id, t] : memory.tracks) d[id] = 1.0;
  return d;
}

Distribution nav_likelihood(const Pose& robot, VelocityCommand cmd,
                            std::span<const Area> areas,
                            const BeliefParams& params) {
  if (std::abs(cmd.v) < params.u_min) return uniform_likelihood(areas);
  Pose facing = robot;
  if (cmd.v < 0.0) facing.heading = normalize_angle(robot.heading + kPi);
  Distribution out;
  for (const auto& a : areas) {
    const double b = safe_bearing(facing, a.centroid);
    const double d = distance(robot.position(), a.centroid);
    out[a.id] = std::exp(params.kappa_nav * std::cos(b)) *
                std::exp(-d / params.sigma_nav);
  }
  return out;
}

Distribution manip_likelihood(const Pose& robot, const TrackMemory& memory,
                              const BeliefParams& params) {
  if (memory.empty()) throw EmptyCandidateSet();
  Distribution out;
  for (const auto& [id, t] : memory.tracks) {
    const double b = safe_bearing(robot, t.position_estimate);
    const double d = distance(robot.position(), t.position_estimate);
    out[id] = std::exp(params.kappa_man * std::cos(b)) *
              std::exp(-d / params.sigma_d) * t.descriptor.graspability *
              t.smoothed_confidence;
  }
  return out;
}

BeliefState update_belief(const BeliefState& state, const Distribution& nav_L,
                          const Distribution& man_L, const SemanticPrior* prior,
                          const Scenario& scenario, const TrackMemory& memory,
                          const BeliefParams& params) {
  const bool active = prior_active(prior, params);
  BeliefState next;
  next.tick = state.tick + 1;
  next.pruned = state.pruned;
  next.prompt_version = state.prompt_version;

  const std::size_t n_areas = nav_L.size();
  for (const auto& [k, lk] : nav_L) {
    auto it = state.nav.find(k);
    const double prev =
        it != state.nav.end() ? it->second : 1.0 / static_cast<double>(n_areas);
    const double semantic =
        active ? std::pow(area_weight(*prior, k, n_areas), params.gamma) : 1.0;
    next.nav[k] = std::pow(prev, params.lambda) * lk * semantic;
  }
  if (!next.nav.empty() && !normalize(next.nav)) {
    fill_uniform(next.nav);
    next.underflow = true;
  }

  std::size_t n_candidates = 0;
  for (const auto& [j, lj] : man_L) n_candidates += next.pruned.count(j) ? 0 : 1;
  for (const auto& [j, lj] : man_L) {
    if (next.pruned.count(j)) continue;
    auto it = state.man.find(j);
    const double prev = it != state.man.end()
                            ? it->second
                            : 1.0 / static_cast<double>(n_candidates);
    const double semantic =
        active ? std::pow(object_weight(*prior, j, memory.size()), params.gamma)
               : 1.0;
    next.man[j] = std::pow(prev, params.lambda) * lj * semantic;
  }
  if (!next.man.empty() && !normalize(next.man)) {
    fill_uniform(next.man);
    next.underflow = true;
  }

  recompute_posterior(next, scenario, memory);
  return next;
}

BeliefState reconcile_prior(const BeliefState& state, const SemanticPrior& prior,
                            const Scenario& scenario, const TrackMemory& memory,
                            double epsilon) {
  BeliefState next = state;
  for (const auto& id : state.pruned) {
    if (!prior.pruned.count(id) && memory.find(id)) next.man[id] = epsilon;
  }
  for (const auto& id : prior.pruned) next.man.erase(id);
  next.pruned = prior.pruned;
  next.prompt_version = prior.prompt_version;
  if (!next.man.empty() && !normalize(next.man)) fill_uniform(next.man);
  recompute_posterior(next, scenario, memory);
  return next;
}

BeliefState on_prompt_update(const BeliefState& state,
                             const SemanticPrior& new_prior,
                             const Scenario& scenario, const TrackMemory& memory,
                             double epsilon) {
  if (new_prior.prompt_version <= state.prompt_version) return state;
  return reconcile_prior(state, new_prior, scenario, memory, epsilon);
}

}  // namespace intent
