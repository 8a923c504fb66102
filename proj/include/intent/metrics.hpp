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

#ifndef INTENT_METRICS_HPP_
#define INTENT_METRICS_HPP_

#include <optional>
#include <span>
#include <string>

#include "json.hpp"

#include "intent/trace.hpp"

namespace intent {

struct TrialMetrics {
  std::optional<double> ttcp_s;
  bool intent_correct = false;
  std::optional<double> completion_s;
  std::optional<double> stability;
  bool committed = false;
  std::string trace_path;
};

// First tick whose top probability strictly exceeds theta, counted from
// tick 0 (the scan is included).
std::optional<double> compute_ttcp(const Trace& trace);

// Commitment (last entry into Assisting before the reach) to the reach
// event. Absent unless the trial reached the target.
std::optional<double> compute_completion(const Trace& trace);

// Fraction of ticks from the first correct top through the end of the trace
// whose top is the true target. Absent when never predicted.
std::optional<double> compute_stability(const Trace& trace,
                                        const std::string& true_target);

// Top id at the last commitment, or at the end of the trace.
bool compute_intent_correct(const Trace& trace, const std::string& true_target);

// Fraction of correct trials. Throws std::invalid_argument when empty.
double compute_accuracy(std::span<const TrialMetrics> suite);

TrialMetrics compute_metrics(const Trace& trace);
nlohmann::json to_json(const TrialMetrics& m);

}  // namespace intent

#endif  // INTENT_METRICS_HPP_
