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

#ifndef INTENT_TESTS_SUPPORT_HPP_
#define INTENT_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <memory>
#include <string>

#include "json.hpp"

#include "intent/config.hpp"
#include "intent/ontology.hpp"
#include "intent/perception.hpp"
#include "intent/world.hpp"

namespace intent::testing {

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(INTENT_DATA_DIR) / rel;
}

struct World {
  std::shared_ptr<const Scenario> scenario;
  std::shared_ptr<const Ontology> ontology;
};

inline World reference_world() {
  static const World w = [] {
    auto s = std::make_shared<const Scenario>(
        load_scenario(data_path("scenarios/living_room.json")));
    auto o = std::make_shared<const Ontology>(Ontology::load(s->ontology_file()));
    return World{s, o};
  }();
  return w;
}

inline const Ontology& reference_ontology() { return *reference_world().ontology; }

inline nlohmann::json square_area(const std::string& id, double x0, double y0,
                                  double x1, double y1) {
  return {{"id", id},
          {"name", id},
          {"polygon", {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}};
}

// One 2x2 square area at the origin with one mug inside.
inline nlohmann::json minimal_scenario_json() {
  return {{"name", "minimal"},
          {"ontology", "household.json"},
          {"reach_radius", 0.5},
          {"robot_start", {{"x", 0.0}, {"y", 0.0}, {"heading", 0.0}}},
          {"areas", {square_area("room", -1, -1, 1, 1)}},
          {"objects",
           {{{"id", "mug1"},
             {"label", "mug"},
             {"category", "kitchenware"},
             {"position", {0.5, 0.5}}}}}};
}

inline Track make_track(const std::string& label, const std::string& category,
                        Vec2 pos, double confidence = 1.0,
                        double graspability = 1.0, AttributeMap attrs = {},
                        std::vector<Relation> relations = {}) {
  Track t;
  t.descriptor.label = label;
  t.descriptor.category = category;
  t.descriptor.attributes = std::move(attrs);
  t.descriptor.relations = std::move(relations);
  t.descriptor.graspability = graspability;
  t.smoothed_confidence = confidence;
  t.position_estimate = pos;
  return t;
}

// Trial config on the reference scenario with a direct operator.
inline TrialConfig reference_trial(const std::string& target,
                                   const std::string& prompt,
                                   std::uint64_t seed) {
  nlohmann::json j = {{"scenario", data_path("scenarios/living_room.json").string()},
                      {"prompt", prompt},
                      {"true_target", target},
                      {"seed", seed},
                      {"operator", {{"kind", "direct"}}}};
  return parse_trial_config(j, {});
}

}  // namespace intent::testing

#endif  // INTENT_TESTS_SUPPORT_HPP_
