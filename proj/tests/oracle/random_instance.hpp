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

// Random small filter instances shared by the unit and acceptance suites.
// Areas are unit-height squares laid out along x so that membership is
// decided here from the x coordinate alone.

#ifndef INTENT_TESTS_ORACLE_RANDOM_INSTANCE_HPP_
#define INTENT_TESTS_ORACLE_RANDOM_INSTANCE_HPP_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracle/belief_oracle.hpp"

#include "intent/belief.hpp"
#include "intent/world.hpp"

namespace oracle {

struct Instance {
  intent::Scenario scenario;
  intent::TrackMemory memory;
  intent::SemanticPrior prior;
  intent::BeliefParams params;
  std::map<std::string, std::optional<std::string>> area_of_track;
  std::vector<Dist> nav_L;
  std::vector<Dist> man_L;
};

inline std::string area_name(int k) { return "k" + std::to_string(k); }
inline std::string track_name(int j) { return "j" + std::to_string(j); }

inline Instance random_instance(std::mt19937_64& gen, int max_areas,
                                int max_tracks, int max_ticks) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  Instance in;
  const int K = pick(1, max_areas);
  const int J = pick(1, max_tracks);
  const int T = pick(1, max_ticks);

  nlohmann::json areas = nlohmann::json::array();
  for (int k = 0; k < K; ++k) {
    const double x0 = 2.0 * k;
    areas.push_back({{"id", area_name(k)},
                     {"name", area_name(k)},
                     {"polygon", {{x0, 0.0}, {x0 + 1.0, 0.0}, {x0 + 1.0, 1.0}, {x0, 1.0}}}});
  }
  nlohmann::json doc = {{"name", "random"},
                        {"ontology", "none.json"},
                        {"reach_radius", 0.5},
                        {"robot_start", {{"x", -1.0}, {"y", 0.5}, {"heading", 0.0}}},
                        {"areas", areas},
                        {"objects", nlohmann::json::array()}};
  in.scenario = intent::parse_scenario(doc);

  for (int j = 0; j < J; ++j) {
    // Either inside square k (x in (2k, 2k+1)) or in the gap after it.
    const int k = pick(0, K - 1);
    const bool inside = u(gen) < 0.8;
    const double x = 2.0 * k + (inside ? 0.1 + 0.8 * u(gen) : 1.2 + 0.6 * u(gen));
    intent::Track t;
    t.descriptor.label = "thing";
    t.descriptor.category = "thing";
    t.smoothed_confidence = 1.0;
    t.position_estimate = {x, 0.1 + 0.8 * u(gen)};
    in.memory.tracks[track_name(j)] = t;
    in.area_of_track[track_name(j)] =
        inside ? std::optional<std::string>(area_name(k)) : std::nullopt;
  }

  double total = 0.0;
  for (int j = 0; j < J; ++j) total += in.prior.object_weights[track_name(j)] = 0.01 + u(gen);
  for (auto& [id, w] : in.prior.object_weights) w /= total;
  total = 0.0;
  for (int k = 0; k < K; ++k) total += in.prior.area_weights[area_name(k)] = 0.01 + u(gen);
  for (auto& [id, w] : in.prior.area_weights) w /= total;
  in.prior.prompt_version = 1;

  in.params.lambda = 0.5 + 0.5 * u(gen);
  in.params.gamma = 2.0 * u(gen);

  // Likelihood magnitudes span several decades.
  for (int t = 0; t < T; ++t) {
    Dist nav, man;
    for (int k = 0; k < K; ++k) nav[area_name(k)] = std::exp(6.0 * u(gen) - 3.0);
    for (int j = 0; j < J; ++j) man[track_name(j)] = std::exp(6.0 * u(gen) - 3.0);
    in.nav_L.push_back(nav);
    in.man_L.push_back(man);
  }
  return in;
}

// Posterior after all recorded ticks, straight from the product form.
inline Dist oracle_posterior(const Instance& in) {
  const double g = in.params.gamma;
  Dist nav0, man0;
  for (const auto& [k, w] : in.prior.area_weights) nav0[k] = std::pow(w, g);
  for (const auto& [j, w] : in.prior.object_weights) man0[j] = std::pow(w, g);
  std::vector<Step> nav_steps, man_steps;
  for (std::size_t t = 0; t < in.nav_L.size(); ++t) {
    nav_steps.push_back({in.nav_L[t], in.prior.area_weights});
    man_steps.push_back({in.man_L[t], in.prior.object_weights});
  }
  const Dist nav = unrolled(nav0, nav_steps, in.params.lambda, g);
  const Dist man = unrolled(man0, man_steps, in.params.lambda, g);
  return posterior(nav, man, in.area_of_track);
}

// Same quantity through the recursive filter.
inline intent::BeliefState recursive_belief(const Instance& in) {
  auto s = intent::init_belief(in.scenario, in.memory, &in.prior, in.params);
  for (std::size_t t = 0; t < in.nav_L.size(); ++t) {
    s = intent::update_belief(s, in.nav_L[t], in.man_L[t], &in.prior, in.scenario,
                              in.memory, in.params);
  }
  return s;
}

}  // namespace oracle

#endif  // INTENT_TESTS_ORACLE_RANDOM_INSTANCE_HPP_
