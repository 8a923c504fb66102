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

#include "intent/semantic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "intent/errors.hpp"

namespace intent {

namespace {

constexpr double kExact = 1.0;
constexpr double kSynonym = 0.9;
constexpr double kCategoryMember = 0.8;
constexpr double kSibling = 0.3;
constexpr double kUnrelated = 0.05;

constexpr double kAttrSatisfied = 1.0;
constexpr double kAttrViolated = 0.2;
constexpr double kAttrAbsent = 0.6;

constexpr double kRelSatisfied = 1.0;
constexpr double kRelNoReference = 0.4;
constexpr double kRelViolated = 0.1;

double base_score(const PromptQuery& q, std::string_view label,
                  std::string_view category, const Ontology& ont) {
  if (q.noun) {
    if (label == *q.noun) return kExact;
    if (ont.are_synonyms(label, *q.noun)) return kSynonym;
    // Another item of the noun's own category.
    if (ont.parent(*q.noun) == std::optional<std::string>(category)) {
      return kSibling;
    }
    return kUnrelated;
  }
  if (q.category) {
    if (ont.descends_from(category, *q.category)) return kCategoryMember;
    const auto qp = ont.parent(*q.category);
    if (qp && ont.parent(category) == qp) return kSibling;
    return kUnrelated;
  }
  // Goal-less relational prompt ("anything on the counter"): the relation
  // constraints alone discriminate.
  return kExact;
}

double attribute_factor(const PromptQuery& q, const AttributeMap& attrs) {
  double f = 1.0;
  for (const auto& [key, want] : q.attribute_constraints) {
    auto it = attrs.find(key);
    if (it == attrs.end()) {
      f *= kAttrAbsent;
    } else {
      f *= it->second == want ? kAttrSatisfied : kAttrViolated;
    }
  }
  return f;
}

bool matches_noun(const Track& t, std::string_view target, const Ontology& ont) {
  const auto& d = t.descriptor;
  if (d.label == target || ont.are_synonyms(d.label, target)) return true;
  return ont.is_category(target) && ont.descends_from(d.category, target);
}

double distance_to_polygon(Vec2 p, const std::vector<Vec2>& poly) {
  if (point_in_polygon(p, poly)) return 0.0;
  double best = INFINITY;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(
                              p, {poly[i], poly[(i + 1) % poly.size()]}));
  }
  return best;
}

double relation_factor(const RelationConstraint& rc, std::string_view self_id,
                       const Track& self, const TrackMemory& memory,
                       const ScoringContext& ctx) {
  const auto& declared = self.descriptor.relations;
  auto declares_on = [&](std::string_view target) {
    return std::any_of(declared.begin(), declared.end(), [&](const Relation& r) {
      return r.predicate == Predicate::on && r.target == target;
    });
  };

  if (rc.target_is_area) {
    const Area* area = ctx.scenario.find_area(rc.target);
    if (area == nullptr) return kRelNoReference;
    bool ok = false;
    if (rc.predicate == Predicate::on) {
      ok = declares_on(area->id);
    } else {
      ok = distance_to_polygon(self.position_estimate, area->polygon) <=
           ctx.near_radius;
    }
    return ok ? kRelSatisfied : kRelViolated;
  }

  bool any_reference = false;
  bool ok = false;
  for (const auto& [id, other] : memory.tracks) {
    if (id == self_id || !matches_noun(other, rc.target, ctx.ontology)) continue;
    any_reference = true;
    if (rc.predicate == Predicate::near) {
      ok = ok || distance(self.position_estimate, other.position_estimate) <=
                     ctx.near_radius;
    } else {
      ok = ok || declares_on(id);
    }
  }
  if (!any_reference) return kRelNoReference;
  return ok ? kRelSatisfied : kRelViolated;
}

}  // namespace

void SemanticParams::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw std::invalid_argument("alpha and beta must be >= 0");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("rho must be in [0, 1)");
  }
  if (!(near_radius > 0.0)) {
    throw std::invalid_argument("near_radius must be > 0");
  }
}

double mock_vlm_score(const PromptQuery& query, std::string_view track_id,
                      const TrackMemory& memory, const ScoringContext& ctx) {
  const Track* t = memory.find(track_id);
  if (t == nullptr) {
    throw std::invalid_argument("unknown track '" + std::string(track_id) + "'");
  }
  const auto& d = t->descriptor;
  double s = base_score(query, d.label, d.category, ctx.ontology);
  s *= attribute_factor(query, d.attributes);
  for (const auto& rc : query.relation_constraints) {
    s *= relation_factor(rc, track_id, *t, memory, ctx);
  }
  return std::clamp(s, 0.01, 1.0);
}

double bare_label_score(const PromptQuery& query, std::string_view label,
                        const Ontology& ontology) {
  const std::string category = ontology.parent(label).value_or("");
  double s = base_score(query, label, category, ontology);
  s *= attribute_factor(query, {});
  return std::clamp(s, 0.01, 1.0);
}

ScoreMap mock_llm_rank(const PromptQuery& query,
                       std::span<const std::string> labels,
                       const Ontology& ontology) {
  if (labels.empty()) throw std::invalid_argument("mock_llm_rank: no labels");
  std::vector<std::string> unique(labels.begin(), labels.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<std::pair<double, std::string>> scored;
  for (const auto& l : unique) {
    scored.emplace_back(bare_label_score(query, l, ontology), l);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  ScoreMap out;
  for (std::size_t r = 0; r < scored.size(); ++r) {
    out[scored[r].second] = 1.0 / static_cast<double>(r + 1);
  }
  return out;
}

TrackAreas assign_areas(const TrackMemory& memory, std::span<const Area> areas) {
  TrackAreas out;
  for (const auto& [id, t] : memory.tracks) {
    out[id] = area_of(t.position_estimate, areas);
  }
  return out;
}

SemanticPrior combine(const ScoreMap& vlm, const ScoreMap& llm,
                      const SemanticParams& params, const TrackAreas& areas,
                      std::span<const Area> area_list) {
  if (vlm.empty()) throw EmptyCandidateSet();
  if (vlm.size() != llm.size()) {
    throw std::invalid_argument("combine: vlm and llm key sets differ");
  }
  SemanticPrior prior;
  double total = 0.0;
  for (const auto& [id, v] : vlm) {
    auto it = llm.find(id);
    if (it == llm.end()) {
      throw std::invalid_argument("combine: vlm and llm key sets differ");
    }
    const double raw = std::max(
        std::pow(v, params.alpha) * std::pow(it->second, params.beta),
        params.epsilon);
    prior.object_weights[id] = raw;
    total += raw;
  }
  for (auto& [id, w] : prior.object_weights) w /= total;

  for (const auto& a : area_list) prior.area_weights[a.id] = 0.0;
  for (const auto& [id, w] : prior.object_weights) {
    auto it = areas.find(id);
    if (it == areas.end() || !it->second) continue;
    double& aw = prior.area_weights[*it->second];
    aw = std::max(aw, w);
  }
  double area_total = 0.0;
  for (auto& [id, aw] : prior.area_weights) {
    if (aw == 0.0) aw = params.epsilon;
    area_total += aw;
  }
  for (auto& [id, aw] : prior.area_weights) aw /= area_total;
  return prior;
}

SemanticPrior prune(SemanticPrior prior, double rho) {
  if (prior.object_weights.empty()) return prior;
  auto best = prior.object_weights.begin();
  for (auto it = prior.object_weights.begin(); it != prior.object_weights.end();
       ++it) {
    if (it->second > best->second) best = it;
  }
  const double max_w = best->second;
  const std::string keep = best->first;
  const std::size_t before = prior.pruned.size();
  for (auto it = prior.object_weights.begin();
       it != prior.object_weights.end();) {
    if (it->first != keep && it->second / max_w < rho) {
      prior.pruned.insert(it->first);
      it = prior.object_weights.erase(it);
    } else {
      ++it;
    }
  }
  // Renormalising an already normalised map can move the last bit, which
  // would break prune(prune(p)) == prune(p).
  if (prior.pruned.size() == before) return prior;
  double total = 0.0;
  for (const auto& [id, w] : prior.object_weights) total += w;
  for (auto& [id, w] : prior.object_weights) w /= total;
  return prior;
}

SemanticPrior uniform_prior(const TrackMemory& memory,
                            std::span<const Area> areas, int prompt_version) {
  SemanticPrior p;
  p.prompt_version = prompt_version;
  for (const auto& [id, t] : memory.tracks) {
    p.object_weights[id] = 1.0 / static_cast<double>(memory.size());
  }
  for (const auto& a : areas) {
    p.area_weights[a.id] = 1.0 / static_cast<double>(areas.size());
  }
  return p;
}

ScoreResult MockScorer::score(const PromptQuery& query,
                              const TrackMemory& memory,
                              const ScoringContext& ctx) {
  count_call();
  ScoreResult r;
  std::vector<std::string> labels;
  for (const auto& [id, t] : memory.tracks) {
    r.vlm[id] = mock_vlm_score(query, id, memory, ctx);
    labels.push_back(t.descriptor.label);
  }
  if (labels.empty()) return r;
  const ScoreMap by_label = mock_llm_rank(query, labels, ctx.ontology);
  for (const auto& [id, t] : memory.tracks) {
    r.llm[id] = by_label.at(t.descriptor.label);
  }
  return r;
}

SemanticPrior score_round(const std::optional<PromptQuery>& query,
                          const TrackMemory& memory, ScorerBackend& backend,
                          const SemanticParams& params,
                          const ScoringContext& ctx, int prompt_version) {
  if (!query || memory.empty()) {
    return uniform_prior(memory, ctx.scenario.areas, prompt_version);
  }
  const ScoreResult scores = backend.score(*query, memory, ctx);
  SemanticPrior prior =
      prune(combine(scores.vlm, scores.llm, params,
                    assign_areas(memory, ctx.scenario.areas),
                    ctx.scenario.areas),
            params.rho);
  prior.prompt_version = prompt_version;
  return prior;
}

SemanticPrior score_round_or_keep(const SemanticPrior& previous,
                                  const std::optional<PromptQuery>& query,
                                  const TrackMemory& memory,
                                  ScorerBackend& backend,
                                  const SemanticParams& params,
                                  const ScoringContext& ctx,
                                  int prompt_version, bool* failed) {
  try {
    SemanticPrior p =
        score_round(query, memory, backend, params, ctx, prompt_version);
    if (failed) *failed = false;
    return p;
  } catch (const BackendUnavailable&) {
    if (failed) *failed = true;
    return previous;
  }
}

}  // namespace intent
