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

#ifndef INTENT_BELIEF_HPP_
#define INTENT_BELIEF_HPP_

#include <map>
#include <set>
#include <span>
#include <string>

#include "intent/geometry.hpp"
#include "intent/perception.hpp"
#include "intent/semantic.hpp"
#include "intent/world.hpp"

namespace intent {

using Distribution = std::map<std::string, double>;

struct BeliefParams {
  double kappa_nav = 2.0;  // heading concentration, navigation layer
  double sigma_nav = 5.0;  // m
  double kappa_man = 3.0;  // heading concentration, manipulation layer
  double sigma_d = 1.5;    // m
  double lambda = 0.9;     // forgetting exponent in (0, 1]
  double gamma = 1.0;      // semantic fusion exponent
  double u_min = 0.05;     // m/s; below this the command carries no intent

  void validate() const;
};

struct BeliefState {
  Distribution nav;        // area id -> p
  Distribution man;        // unpruned track id -> p
  Distribution posterior;  // unpruned track id -> p
  std::set<std::string> pruned;
  std::string top_id;      // empty when there are no candidates
  double top_p = 0.0;
  int tick = 0;
  int prompt_version = 0;  // version of the last reconciled prior
  bool underflow = false;  // a layer was reset to uniform this tick

  friend bool operator==(const BeliefState&, const BeliefState&) = default;
};

// A prior only acts on beliefs when it exists and gamma > 0; otherwise every
// operation below reduces exactly to the no-semantics filter.
inline bool prior_active(const SemanticPrior* prior, const BeliefParams& p) {
  return prior != nullptr && p.gamma > 0.0;
}

BeliefState init_belief(const Scenario& scenario, const TrackMemory& memory,
                        const SemanticPrior* prior, const BeliefParams& params);

Distribution nav_likelihood(const Pose& robot, VelocityCommand cmd,
                            std::span<const Area> areas,
                            const BeliefParams& params);

// Throws EmptyCandidateSet for an empty memory.
Distribution manip_likelihood(const Pose& robot, const TrackMemory& memory,
                              const BeliefParams& params);

// All-ones maps (the uninformative likelihood).
Distribution uniform_likelihood(std::span<const Area> areas);
Distribution uniform_likelihood(const TrackMemory& memory);

// One recursive step:
//   nav'_k ~ nav_k^lambda * navL_k * area_weight_k^gamma
//   man'_j ~ man_j^lambda * manL_j * object_weight_j^gamma   (unpruned j)
//   post_j ~ nav'(area_of(track j)) * man'_j
// Tracks present in man_L but new to the state enter with the uniform share.
BeliefState update_belief(const BeliefState& state, const Distribution& nav_L,
                          const Distribution& man_L, const SemanticPrior* prior,
                          const Scenario& scenario, const TrackMemory& memory,
                          const BeliefParams& params);

// Adopts the prior's pruned set: tracks leaving it re-enter with mass
// epsilon, tracks joining it are removed; nav is kept and the posterior is
// recomputed. Used whenever a new prior is published.
BeliefState reconcile_prior(const BeliefState& state, const SemanticPrior& prior,
                            const Scenario& scenario, const TrackMemory& memory,
                            double epsilon);

// Prompt change: reconcile_prior guarded by the version. A prior whose
// version is not newer than the state's leaves the state unchanged.
BeliefState on_prompt_update(const BeliefState& state,
                             const SemanticPrior& new_prior,
                             const Scenario& scenario, const TrackMemory& memory,
                             double epsilon);

// nav(area of track) * man, normalised, plus top with lowest-id tie-break.
void recompute_posterior(BeliefState& state, const Scenario& scenario,
                         const TrackMemory& memory);

double total_mass(const Distribution& d);

}  // namespace intent

#endif  // INTENT_BELIEF_HPP_
