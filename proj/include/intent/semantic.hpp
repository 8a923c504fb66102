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

#ifndef INTENT_SEMANTIC_HPP_
#define INTENT_SEMANTIC_HPP_

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "intent/ontology.hpp"
#include "intent/perception.hpp"
#include "intent/prompt.hpp"
#include "intent/world.hpp"

namespace intent {

using ScoreMap = std::map<std::string, double>;

struct SemanticParams {
  double alpha = 1.0;    // VLM exponent
  double beta = 0.5;     // LLM exponent
  double epsilon = 1e-3;
  double rho = 0.02;     // prune ratio relative to the best weight
  double near_radius = 0.75;

  void validate() const;
};

struct SemanticPrior {
  ScoreMap object_weights;  // unpruned tracks only; sums to 1
  ScoreMap area_weights;    // sums to 1
  std::set<std::string> pruned;
  int prompt_version = 0;

  friend bool operator==(const SemanticPrior&, const SemanticPrior&) = default;
};

// Everything the scorers need besides the query and the tracks.
struct ScoringContext {
  const Scenario& scenario;
  const Ontology& ontology;
  double near_radius = 0.75;
};

// Table-driven relevance of one track to the query, in [0.01, 1].
double mock_vlm_score(const PromptQuery& query, std::string_view track_id,
                      const TrackMemory& memory, const ScoringContext& ctx);

// Same table on a bare (label, category) descriptor; attributes count as
// absent and relations are not evaluated.
double bare_label_score(const PromptQuery& query, std::string_view label,
                        const Ontology& ontology);

// Reciprocal-rank scores: labels sorted by bare_label_score descending, ties
// lexicographic; duplicates share one rank.
ScoreMap mock_llm_rank(const PromptQuery& query,
                       std::span<const std::string> labels,
                       const Ontology& ontology);

// Per-track area assignment used for area weights.
using TrackAreas = std::map<std::string, std::optional<std::string>>;
TrackAreas assign_areas(const TrackMemory& memory, std::span<const Area> areas);

// raw = max(vlm^alpha * llm^beta, eps), normalised. Area weight is the max
// of contained track weights (eps for empty areas), normalised.
SemanticPrior combine(const ScoreMap& vlm, const ScoreMap& llm,
                      const SemanticParams& params, const TrackAreas& areas,
                      std::span<const Area> area_list);

// Drops tracks whose weight is below rho times the best weight and
// renormalises the survivors. The argmax always survives.
SemanticPrior prune(SemanticPrior prior, double rho);

SemanticPrior uniform_prior(const TrackMemory& memory,
                            std::span<const Area> areas, int prompt_version);

struct ScoreResult {
  ScoreMap vlm;  // keyed by track id
  ScoreMap llm;  // keyed by track id
};

class ScorerBackend {
 public:
  virtual ~ScorerBackend() = default;
  // Throws BackendUnavailable (or a subclass) on failure.
  virtual ScoreResult score(const PromptQuery& query, const TrackMemory& memory,
                            const ScoringContext& ctx) = 0;
  virtual bool deterministic() const = 0;
  std::size_t calls() const { return calls_.load(); }

 protected:
  void count_call() { ++calls_; }

 private:
  std::atomic<std::size_t> calls_{0};
};

class MockScorer final : public ScorerBackend {
 public:
  ScoreResult score(const PromptQuery& query, const TrackMemory& memory,
                    const ScoringContext& ctx) override;
  bool deterministic() const override { return true; }
};

// One scoring round: backend scores, combine, prune. An absent query means
// the prompt was unparsable and yields the uniform prior. Backend failures
// propagate as BackendUnavailable; the caller keeps its previous prior.
SemanticPrior score_round(const std::optional<PromptQuery>& query,
                          const TrackMemory& memory, ScorerBackend& backend,
                          const SemanticParams& params,
                          const ScoringContext& ctx, int prompt_version);

// score_round with the staleness fallback: on BackendUnavailable the
// previous prior is returned unchanged and *failed (if given) is set.
SemanticPrior score_round_or_keep(const SemanticPrior& previous,
                                  const std::optional<PromptQuery>& query,
                                  const TrackMemory& memory,
                                  ScorerBackend& backend,
                                  const SemanticParams& params,
                                  const ScoringContext& ctx,
                                  int prompt_version, bool* failed = nullptr);

}  // namespace intent

#endif  // INTENT_SEMANTIC_HPP_
