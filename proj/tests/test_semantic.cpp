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

#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"

#include "intent/errors.hpp"
#include "intent/prompt.hpp"
#include "intent/semantic.hpp"

namespace intent {
namespace {

using testing::make_track;
using testing::reference_ontology;
using testing::reference_world;

// Every scenario object as a fully observed track.
TrackMemory full_memory(const Scenario& s) {
  TrackMemory m;
  for (const auto& o : s.objects) {
    Track t;
    t.descriptor = describe(o);
    t.smoothed_confidence = 1.0;
    t.position_estimate = o.position;
    m.tracks[o.id] = t;
  }
  return m;
}

ScoringContext reference_context() {
  const auto w = reference_world();
  return ScoringContext{*w.scenario, *w.ontology, 0.75};
}

PromptQuery query(const std::string& text) {
  return parse_prompt(text, reference_ontology(), reference_world().scenario->areas);
}

class FailingScorer final : public ScorerBackend {
 public:
  ScoreResult score(const PromptQuery&, const TrackMemory&,
                    const ScoringContext&) override {
    count_call();
    throw BackendTimeout("deadline exceeded");
  }
  bool deterministic() const override { return false; }
};

TEST_CASE("mock_vlm_score follows the scoring table") {
  const auto ctx = reference_context();
  TrackMemory m;
  m.tracks["a"] = make_track("mug", "kitchenware", {0, 0}, 1, 1, {{"color", "red"}});
  m.tracks["b"] = make_track("mug", "kitchenware", {0, 0}, 1, 1, {{"color", "blue"}});
  m.tracks["c"] = make_track("soda_can", "drink", {0, 0});
  m.tracks["d"] = make_track("mug", "kitchenware", {0, 0});
  m.tracks["e"] = make_track("teddy_bear", "toys", {0, 0});

  const auto red_mug = query("red mug");
  CHECK(mock_vlm_score(red_mug, "a", m, ctx) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mock_vlm_score(red_mug, "b", m, ctx) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(mock_vlm_score(red_mug, "d", m, ctx) == doctest::Approx(0.6).epsilon(1e-15));

  const auto drink = query("something to drink");
  REQUIRE(drink.category == std::optional<std::string>("drink"));
  CHECK(mock_vlm_score(drink, "c", m, ctx) == doctest::Approx(0.8).epsilon(1e-15));

  CHECK(mock_vlm_score(red_mug, "e", m, ctx) == doctest::Approx(0.05 * 0.6).epsilon(1e-15));
  // Another kitchenware item, colour absent.
  m.tracks["f"] = make_track("bowl", "kitchenware", {0, 0});
  CHECK(mock_vlm_score(red_mug, "f", m, ctx) == doctest::Approx(0.3 * 0.6).epsilon(1e-15));
  CHECK_THROWS_AS(mock_vlm_score(red_mug, "zzz", m, ctx), std::invalid_argument);
}

TEST_CASE("mock_vlm_score scores are clamped into [0.01, 1]") {
  const auto ctx = reference_context();
  const auto m = full_memory(*reference_world().scenario);
  for (const char* text : {"red mug", "the big blue toy car near the sofa",
                           "something to eat on the kitchen counter", "a tool"}) {
    const auto q = query(text);
    for (const auto& [id, t] : m.tracks) {
      const double s = mock_vlm_score(q, id, m, ctx);
      CHECK(s >= 0.01);
      CHECK(s <= 1.0);
    }
  }
}

TEST_CASE("mock_llm_rank uses reciprocal ranks") {
  const auto& onto = reference_ontology();
  std::vector<std::string> two{"mug", "plant"};
  const auto r = mock_llm_rank(query("mug"), two, onto);
  CHECK(r.at("mug") == 1.0);
  CHECK(r.at("plant") == 0.5);

  std::vector<std::string> one{"plant"};
  CHECK(mock_llm_rank(query("mug"), one, onto).at("plant") == 1.0);

  // teddy_bear and hammer both score 0.05 against "mug": lexicographic order.
  std::vector<std::string> tie{"teddy_bear", "hammer"};
  const auto t = mock_llm_rank(query("mug"), tie, onto);
  CHECK(t.at("hammer") == 1.0);
  CHECK(t.at("teddy_bear") == 0.5);

  std::vector<std::string> dup{"plant", "mug", "plant"};
  const auto d = mock_llm_rank(query("mug"), dup, onto);
  CHECK(d.size() == 2);
  CHECK(d.at("plant") == 0.5);

  std::vector<std::string> none;
  CHECK_THROWS(mock_llm_rank(query("mug"), none, onto));
}

TEST_CASE("combine evaluates the fusion formula") {
  const SemanticParams p;  // alpha 1, beta 0.5, eps 1e-3
  const std::vector<Area> areas;
  const auto prior = combine({{"a", 1.0}, {"b", 0.2}}, {{"a", 1.0}, {"b", 0.5}},
                             p, {}, areas);
  const double rb = 0.2 * std::sqrt(0.5);
  CHECK(prior.object_weights.at("a") == doctest::Approx(1.0 / (1.0 + rb)).epsilon(1e-14));
  CHECK(prior.object_weights.at("b") == doctest::Approx(rb / (1.0 + rb)).epsilon(1e-14));

  ScoreMap v, l;
  for (const char* id : {"x", "y", "z", "w"}) {
    v[id] = 0.37;
    l[id] = 0.37;
  }
  for (const auto& [id, w] : combine(v, l, p, {}, areas).object_weights) {
    CHECK(w == doctest::Approx(0.25).epsilon(1e-15));
  }

  SemanticParams flat = p;
  flat.alpha = 0.0;
  flat.beta = 0.0;
  for (const auto& [id, w] :
       combine({{"a", 0.9}, {"b", 0.01}}, {{"a", 1.0}, {"b", 0.5}}, flat, {}, areas)
           .object_weights) {
    CHECK(w == 0.5);
  }

  CHECK_THROWS_AS(combine({}, {}, p, {}, areas), EmptyCandidateSet);
  CHECK_THROWS(combine({{"a", 1.0}}, {{"b", 1.0}}, p, {}, areas));
}

TEST_CASE("combine floors raw scores and derives area weights") {
  SemanticParams p;
  const std::vector<Area> areas{{"k1", "k1", {}, {}}, {"k2", "k2", {}, {}},
                                {"k3", "k3", {}, {}}};
  const TrackAreas where{{"a", "k1"}, {"b", "k1"}, {"c", "k2"}, {"d", std::nullopt}};
  const auto prior = combine({{"a", 0.9}, {"b", 0.3}, {"c", 1e-9}, {"d", 0.5}},
                             {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}, {"d", 1.0}}, p,
                             where, areas);
  const double total = 0.9 + 0.3 + 1e-3 + 0.5;
  CHECK(prior.object_weights.at("c") == doctest::Approx(1e-3 / total).epsilon(1e-14));
  // k1 = max(a, b); k2 = c; k3 = eps before normalisation.
  const double a = 0.9 / total, c = 1e-3 / total;
  const double z = a + c + 1e-3;
  CHECK(prior.area_weights.at("k1") == doctest::Approx(a / z).epsilon(1e-14));
  CHECK(prior.area_weights.at("k2") == doctest::Approx(c / z).epsilon(1e-14));
  CHECK(prior.area_weights.at("k3") == doctest::Approx(1e-3 / z).epsilon(1e-14));
}

TEST_CASE("prune drops tracks relative to the best weight") {
  SemanticPrior p;
  p.object_weights = {{"a", 0.9}, {"b", 0.09}, {"c", 0.01}};
  const auto q = prune(p, 0.02);
  CHECK(q.pruned == std::set<std::string>{"c"});
  CHECK(q.object_weights.at("a") == doctest::Approx(0.9 / 0.99).epsilon(1e-14));
  CHECK(q.object_weights.at("b") == doctest::Approx(0.09 / 0.99).epsilon(1e-14));
  CHECK(prune(q, 0.02) == q);

  // With rho above 1 everything but the argmax goes.
  const auto only = prune(p, 2.0);
  CHECK(only.object_weights.size() == 1);
  CHECK(only.object_weights.at("a") == 1.0);
}

TEST_CASE("semantic prior properties hold on random inputs") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<Area> areas;
  const SemanticParams p;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 8);
    ScoreMap v, l;
    for (int i = 0; i < n; ++i) {
      const std::string id = "t" + std::to_string(i);
      v[id] = u(gen);
      l[id] = 1.0 / (1 + static_cast<int>(gen() % 5));
    }
    const auto prior = combine(v, l, p, {}, areas);
    double sum = 0.0;
    for (const auto& [id, w] : prior.object_weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);

    // Raising one vlm score never lowers that track's weight.
    ScoreMap v2 = v;
    const std::string pick = "t" + std::to_string(gen() % n);
    v2[pick] = std::min(1.0, v2[pick] + 0.3 * u(gen));
    CHECK(combine(v2, l, p, {}, areas).object_weights.at(pick) >=
          prior.object_weights.at(pick));

    // Scaling every raw score leaves the weights unchanged. With alpha 1 and
    // beta 0 raw = vlm, so scaling vlm scales raw (kept above the floor).
    SemanticParams lin = p;
    lin.beta = 0.0;
    ScoreMap vs, vc;
    for (const auto& [id, s] : v) {
      vs[id] = 0.01 + 0.5 * s;
      vc[id] = 1.7 * vs[id];
    }
    const auto base = combine(vs, l, lin, {}, areas);
    const auto scaled = combine(vc, l, lin, {}, areas);
    for (const auto& [id, w] : base.object_weights) {
      CHECK(std::abs(scaled.object_weights.at(id) - w) <= 1e-12);
    }

    const auto pr = prune(prior, 0.02);
    std::string best;
    double bw = -1;
    for (const auto& [id, w] : prior.object_weights) {
      if (w > bw) {
        bw = w;
        best = id;
      }
    }
    CHECK(pr.object_weights.count(best) == 1);
    CHECK(prune(pr, 0.02) == pr);
  }
}

TEST_CASE("score_round on the reference scene favours the named object") {
  const auto ctx = reference_context();
  const auto m = full_memory(ctx.scenario);
  MockScorer mock;
  const SemanticParams params;
  const auto prior = score_round(query("Bring me the red mug"), m, mock, params, ctx, 3);
  CHECK(prior.prompt_version == 3);
  std::string best;
  double bw = -1;
  for (const auto& [id, w] : prior.object_weights) {
    if (w > bw) {
      bw = w;
      best = id;
    }
  }
  CHECK(best == "red_mug");
  CHECK(prior.pruned.count("red_mug") == 0);
  CHECK(!prior.pruned.empty());
  CHECK(mock.calls() == 1);

  const auto again = score_round(query("Bring me the red mug"), m, mock, params, ctx, 3);
  CHECK(again == prior);
  CHECK(nlohmann::json(again.object_weights).dump() ==
        nlohmann::json(prior.object_weights).dump());
}

TEST_CASE("an unparsable prompt yields the uniform prior") {
  const auto ctx = reference_context();
  const auto m = full_memory(ctx.scenario);
  MockScorer mock;
  const auto prior = score_round(std::nullopt, m, mock, SemanticParams{}, ctx, 2);
  CHECK(prior == uniform_prior(m, ctx.scenario.areas, 2));
  CHECK(prior.pruned.empty());
}

TEST_CASE("a failing backend keeps the previous prior") {
  const auto ctx = reference_context();
  const auto m = full_memory(ctx.scenario);
  FailingScorer failing;
  const auto q = query("red mug");
  CHECK_THROWS_AS(score_round(q, m, failing, SemanticParams{}, ctx, 1),
                  BackendUnavailable);
  const auto previous = uniform_prior(m, ctx.scenario.areas, 1);
  bool failed = false;
  const auto kept =
      score_round_or_keep(previous, q, m, failing, SemanticParams{}, ctx, 2, &failed);
  CHECK(failed);
  CHECK(kept == previous);
  CHECK(failing.calls() == 2);
}

TEST_CASE("semantic params are validated") {
  SemanticParams p;
  CHECK_NOTHROW(p.validate());
  p.epsilon = 0.0;
  CHECK_THROWS(p.validate());
  p = {};
  p.rho = -0.1;
  CHECK_THROWS(p.validate());
  p = {};
  p.alpha = -1.0;
  CHECK_THROWS(p.validate());
}

}  // namespace
}  // namespace intent
