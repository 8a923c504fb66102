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

#ifndef INTENT_WORLD_HPP_
#define INTENT_WORLD_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "intent/geometry.hpp"

namespace intent {

struct Area {
  std::string id;
  std::string name;
  std::vector<Vec2> polygon;
  Vec2 centroid;  // vertex average, recomputed on load

  friend bool operator==(const Area&, const Area&) = default;
};

enum class Predicate { on, near };

struct Relation {
  Predicate predicate = Predicate::near;
  std::string target;  // object or area id

  friend bool operator==(const Relation&, const Relation&) = default;
};

using AttributeMap = std::map<std::string, std::string>;

struct WorldObject {
  std::string id;
  std::string label;
  std::string category;
  AttributeMap attributes;
  std::vector<Relation> relations;
  Vec2 position;
  double graspability = 1.0;

  friend bool operator==(const WorldObject&, const WorldObject&) = default;
};

struct Scenario {
  std::string name;
  std::vector<Area> areas;
  std::vector<WorldObject> objects;
  Pose robot_start;
  // Optional polygon from which randomised start positions are drawn.
  std::vector<Vec2> start_region;
  // Ontology reference as written in the file, and the directory it is
  // resolved against.
  std::string ontology;
  std::filesystem::path base_dir;
  double reach_radius = 0.6;

  const WorldObject* find_object(std::string_view id) const;
  const Area* find_area(std::string_view id) const;
  std::filesystem::path ontology_file() const;
};

// Areas are compared on content; base_dir is provenance, not content.
bool equivalent(const Scenario& a, const Scenario& b);

Scenario parse_scenario(const nlohmann::json& doc,
                        const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& scenario);

const char* to_string(Predicate p);
Predicate parse_predicate(std::string_view s);

// Unicycle step. The command is clamped to `limits` before integration.
Pose step_kinematics(const Pose& pose, VelocityCommand cmd, double dt,
                     const CommandLimits& limits = {});

// Boundary-inclusive containment test.
bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon);
bool is_simple_polygon(std::span<const Vec2> polygon);
Vec2 vertex_average(std::span<const Vec2> polygon);

// Containing area; shared boundaries resolve to the lexicographically lowest
// area id.
std::optional<std::string> area_of(Vec2 point, std::span<const Area> areas);
inline std::optional<std::string> area_of(Vec2 point, const Scenario& s) {
  return area_of(point, s.areas);
}

// Heading-relative bearing in (-pi, pi]. Throws DegenerateTarget when the
// target coincides with the pose position.
double bearing_to(const Pose& from, Vec2 target);

}  // namespace intent

#endif  // INTENT_WORLD_HPP_
