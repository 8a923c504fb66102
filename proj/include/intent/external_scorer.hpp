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

#ifndef INTENT_EXTERNAL_SCORER_HPP_
#define INTENT_EXTERNAL_SCORER_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "intent/semantic.hpp"

namespace intent {

struct EndpointConfig {
  std::string url;  // e.g. "http://127.0.0.1:8088/score"
  double timeout_s = 2.0;

  void validate() const;
};

struct ExternalScores {
  ScoreMap vlm;                      // by track id, clamped to [0, 1]
  std::vector<std::string> ranking;  // labels, most relevant first
};

// Request body: {prompt, candidates: [{id, label, category, attributes,
// relations}]}, candidates in track-id order.
nlohmann::json build_score_request(const PromptQuery& query,
                                   const TrackMemory& memory);

// Parses {scores: [{id, score}], ranking: [label]}. Out-of-range scores are
// clamped, descriptors missing from the response get `epsilon`. Throws
// MalformedResponse.
ExternalScores parse_score_response(const std::string& body,
                                    const TrackMemory& memory, double epsilon);

// Converts a ranked label list into per-track reciprocal-rank scores; labels
// absent from the ranking get `epsilon`.
ScoreMap ranking_to_scores(const std::vector<std::string>& ranking,
                           const TrackMemory& memory, double epsilon);

// One HTTP POST per round, no retries. Throws BackendTimeout,
// MalformedResponse or TransportError.
ExternalScores external_score(const PromptQuery& query,
                              const TrackMemory& memory,
                              const EndpointConfig& endpoint, double epsilon);

class ExternalScorer final : public ScorerBackend {
 public:
  ExternalScorer(EndpointConfig endpoint, double epsilon)
      : endpoint_(std::move(endpoint)), epsilon_(epsilon) {}

  ScoreResult score(const PromptQuery& query, const TrackMemory& memory,
                    const ScoringContext& ctx) override;
  bool deterministic() const override { return false; }

 private:
  EndpointConfig endpoint_;
  double epsilon_;
};

}  // namespace intent

#endif  // INTENT_EXTERNAL_SCORER_HPP_
