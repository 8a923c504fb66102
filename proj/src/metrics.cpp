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

#include "intent/metrics.hpp"

#include <stdexcept>

namespace intent {

std::optional<double> compute_ttcp(const Trace& trace) {
  for (const auto& t : trace.ticks) {
    if (!t.top_id.empty() && t.top_p > trace.header.theta) {
      return t.tick / (1.0 / trace.header.dt);
    }
  }
  return std::nullopt;
}

std::optional<double> compute_completion(const Trace& trace) {
  bool reached = false;
  for (const auto& tr : trace.transitions) reached |= tr.to == Phase::Reached;
  if (!reached || trace.reach_ticks.empty()) return std::nullopt;
  const int reach = trace.reach_ticks.back();
  std::optional<int> start;
  for (const auto& tr : trace.transitions) {
    if (tr.to == Phase::Assisting && tr.tick <= reach) start = tr.tick;
  }
  if (!start) return std::nullopt;
  return (reach - *start) / (1.0 / trace.header.dt);
}

std::optional<double> compute_stability(const Trace& trace,
                                        const std::string& true_target) {
  std::size_t first = trace.ticks.size();
  for (std::size_t i = 0; i < trace.ticks.size(); ++i) {
    if (trace.ticks[i].top_id == true_target) {
      first = i;
      break;
    }
  }
  if (first == trace.ticks.size()) return std::nullopt;
  std::size_t hits = 0;
  for (std::size_t i = first; i < trace.ticks.size(); ++i) {
    hits += trace.ticks[i].top_id == true_target;
  }
  return static_cast<double>(hits) /
         static_cast<double>(trace.ticks.size() - first);
}

bool compute_intent_correct(const Trace& trace,
                            const std::string& true_target) {
  std::optional<std::string> committed;
  for (const auto& tr : trace.transitions) {
    if (tr.to == Phase::Assisting && tr.target) committed = tr.target;
  }
  if (committed) return *committed == true_target;
  return !trace.ticks.empty() && trace.ticks.back().top_id == true_target;
}

double compute_accuracy(std::span<const TrialMetrics> suite) {
  if (suite.empty()) throw std::invalid_argument("accuracy of an empty suite");
  std::size_t correct = 0;
  for (const auto& m : suite) correct += m.intent_correct;
  return static_cast<double>(correct) / static_cast<double>(suite.size());
}

TrialMetrics compute_metrics(const Trace& trace) {
  TrialMetrics m;
  m.ttcp_s = compute_ttcp(trace);
  m.intent_correct = compute_intent_correct(trace, trace.header.true_target);
  m.completion_s = compute_completion(trace);
  m.stability = compute_stability(trace, trace.header.true_target);
  for (const auto& tr : trace.transitions) m.committed |= tr.to == Phase::Assisting;
  return m;
}

nlohmann::json to_json(const TrialMetrics& m) {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"ttcp_s", opt(m.ttcp_s)},
          {"intent_correct", m.intent_correct},
          {"completion_s", opt(m.completion_s)},
          {"stability", opt(m.stability)},
          {"committed", m.committed},
          {"trace_path", m.trace_path}};
}

}  // namespace intent
