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

#ifndef INTENT_TRIAL_HPP_
#define INTENT_TRIAL_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "intent/config.hpp"
#include "intent/metrics.hpp"
#include "intent/simulation.hpp"
#include "intent/trace.hpp"

namespace intent {

struct TrialResult {
  TrialMetrics metrics;
  Trace trace;
  std::vector<TickRecord> records;  // empty unless keep_records
  bool timed_out = false;
};

struct TrialOptions {
  std::string arm = "trial";
  bool keep_records = false;
  std::filesystem::path trace_path;  // written when non-empty
  std::shared_ptr<ScorerBackend> backend;  // overrides make_backend
};

// Runs one seeded headless trial: scripted operator, Scan -> Inference ->
// (Suggested -> Assisting -> Reached), ending at Reached or max_ticks.
TrialResult run_trial(const TrialConfig& cfg,
                      std::shared_ptr<const Scenario> scenario,
                      std::shared_ptr<const Ontology> ontology,
                      const TrialOptions& options = {});

// Convenience overload that loads scenario and ontology from the config.
TrialResult run_trial(const TrialConfig& cfg, const TrialOptions& options = {});

}  // namespace intent

#endif  // INTENT_TRIAL_HPP_
