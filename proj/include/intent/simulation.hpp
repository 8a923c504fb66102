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

#ifndef INTENT_SIMULATION_HPP_
#define INTENT_SIMULATION_HPP_

#include <future>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "intent/assistance.hpp"
#include "intent/belief.hpp"
#include "intent/config.hpp"
#include "intent/operator.hpp"
#include "intent/perception.hpp"
#include "intent/rng.hpp"
#include "intent/semantic.hpp"
#include "intent/world.hpp"

namespace intent {

// Inputs applied at the start of one tick.
struct TickInput {
  std::optional<VelocityCommand> cmd;
  std::optional<std::string> prompt;
  std::optional<Decision> decision;
};

struct TickRecord {
  int tick = 0;
  Pose pose;  // pose at tick start
  std::optional<VelocityCommand> operator_cmd;
  VelocityCommand executed;
  bool likelihood_update = false;  // false: belief re-initialised (scan)
  Distribution nav_L;
  Distribution man_L;
  BeliefState belief;
  std::shared_ptr<const SemanticPrior> prior;  // prior in force this tick
  bool prior_changed = false;
  AssistState assist;
  std::vector<Transition> transitions;
  bool reach_event = false;
  bool override_event = false;
  bool backend_failed = false;
};

// Scoring rounds are either inline (mock, headless external) or run on a
// worker thread with tick-boundary application (interactive external).
enum class ScoringMode { synchronous, asynchronous };

// The whole per-tick pipeline on one 10 Hz clock:
// prompt -> perception -> semantic prior -> belief -> commitment -> motion.
class Simulation {
 public:
  Simulation(TrialConfig cfg, std::shared_ptr<const Scenario> scenario,
             std::shared_ptr<const Ontology> ontology,
             std::shared_ptr<ScorerBackend> backend,
             ScoringMode mode = ScoringMode::synchronous);
  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  const TickRecord& step(const TickInput& in);

  int tick() const { return tick_; }
  bool done() const;
  const Pose& pose() const { return pose_; }
  const TrackMemory& memory() const { return memory_; }
  const BeliefState& belief() const { return belief_; }
  const AssistState& assist() const { return assist_; }
  std::shared_ptr<const SemanticPrior> prior() const { return prior_; }
  const std::optional<PromptQuery>& query() const { return query_; }
  const std::string& prompt_text() const { return prompt_text_; }
  int prompt_version() const { return prompt_version_; }
  const TrialConfig& config() const { return cfg_; }
  const Scenario& scenario() const { return *scenario_; }
  const Ontology& ontology() const { return *ontology_; }
  const TickRecord& last() const { return last_; }

  OperatorView operator_view() const;

 private:
  void set_prompt(const std::string& text);
  void refresh_prior(bool memory_changed, bool track_set_changed);
  void publish_prior(SemanticPrior prior);

  TrialConfig cfg_;
  std::shared_ptr<const Scenario> scenario_;
  std::shared_ptr<const Ontology> ontology_;
  std::shared_ptr<ScorerBackend> backend_;
  ScoringMode mode_;

  Rng perception_rng_;
  ScanPolicy scan_;
  Pose pose_;
  int tick_ = 0;
  TrackMemory memory_;
  std::string prompt_text_;
  std::optional<PromptQuery> query_;
  int prompt_version_ = 0;
  bool query_dirty_ = false;
  std::shared_ptr<const SemanticPrior> prior_;
  BeliefState belief_;
  AssistState assist_;
  int suggested_since_ = 0;
  std::future<SemanticPrior> inflight_;
  int inflight_version_ = -1;
  bool backend_failed_ = false;
  TickRecord last_;
};

// Start pose for a trial: uniform over the scenario's start region with
// uniform heading, or robot_start when there is no region.
Pose draw_start_pose(const Scenario& scenario, std::uint64_t seed,
                     bool randomize);

std::shared_ptr<ScorerBackend> make_backend(const TrialConfig& cfg);

}  // namespace intent

#endif  // INTENT_SIMULATION_HPP_
