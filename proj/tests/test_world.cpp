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
#include <fstream>

#include "doctest.h"
#include "intent/errors.hpp"
#include "intent/rng.hpp"
#include "intent/world.hpp"
#include "support.hpp"

using namespace intent;
using namespace intent::testing;

TEST_CASE("minimal scenario centroid is the square center") {
  const Scenario s = parse_scenario(minimal_scenario_json());
  REQUIRE(s.areas.size() == 1);
  CHECK(s.areas[0].centroid.x == doctest::Approx(0.0));
  CHECK(s.areas[0].centroid.y == doctest::Approx(0.0));
  CHECK(s.objects.size() == 1);
}

TEST_CASE("object outside every area names the object") {
  auto j = minimal_scenario_json();
  j["objects"][0]["position"] = {5.0, 5.0};
  try {
    parse_scenario(j);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.path() == "objects[0].position");
    CHECK(std::string(e.what()).find("mug1") != std::string::npos);
  }
}

TEST_CASE("scenario validation") {
  SUBCASE("unknown key") {
    auto j = minimal_scenario_json();
    j["colour"] = "red";
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("duplicate area id") {
    auto j = minimal_scenario_json();
    j["areas"].push_back(square_area("room", 5, 5, 6, 6));
    CHECK_THROWS_AS(parse_scenario(j), ValidationError);
  }
  SUBCASE("self-intersecting polygon") {
    auto j = minimal_scenario_json();
    j["areas"][0]["polygon"] = {{-1, -1}, {1, 1}, {1, -1}, {-1, 1}};
    CHECK_THROWS_AS(parse_scenario(j), ValidationError);
  }
  SUBCASE("non-positive reach radius") {
    auto j = minimal_scenario_json();
    j["reach_radius"] = 0.0;
    CHECK_THROWS_AS(parse_scenario(j), ValidationError);
  }
  SUBCASE("graspability out of range") {
    auto j = minimal_scenario_json();
    j["objects"][0]["graspability"] = 0.0;
    CHECK_THROWS_AS(parse_scenario(j), ValidationError);
  }
  SUBCASE("unknown relation target") {
    auto j = minimal_scenario_json();
    j["objects"][0]["relations"] = {{{"predicate", "on"}, {"target", "table"}}};
    CHECK_THROWS_AS(parse_scenario(j), ValidationError);
  }
  SUBCASE("bad predicate") {
    auto j = minimal_scenario_json();
    j["objects"][0]["relations"] = {{{"predicate", "under"}, {"target", "room"}}};
    CHECK_THROWS(parse_scenario(j));
  }
  SUBCASE("wrong type") {
    auto j = minimal_scenario_json();
    j["objects"][0]["position"] = "here";
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("malformed file") {
    const auto p = std::filesystem::temp_directory_path() / "intent_bad.json";
    std::ofstream(p) << "{ not json";
    CHECK_THROWS_AS(load_scenario(p), ParseError);
  }
}

TEST_CASE("reference living room groups") {
  const auto w = reference_world();
  std::set<std::string> groups;
  for (const auto& o : w.scenario->objects) groups.insert(w.ontology->group_of(o.label));
  for (const char* g : {"food", "toys", "decorations", "tools"}) {
    CHECK(groups.count(g) == 1);
  }
  CHECK_NOTHROW(check_scenario_vocabulary(*w.scenario, *w.ontology));
}

TEST_CASE("scenario round trip") {
  const auto w = reference_world();
  const Scenario again = parse_scenario(to_json(*w.scenario), w.scenario->base_dir);
  CHECK(equivalent(*w.scenario, again));
  CHECK(to_json(again) == to_json(*w.scenario));
}

TEST_CASE("step_kinematics examples") {
  const Pose a = step_kinematics({0, 0, 0}, {1, 0}, 1.0, {2.0, 4.0});
  CHECK(a.x == doctest::Approx(1.0));
  CHECK(a.y == doctest::Approx(0.0));
  CHECK(a.heading == doctest::Approx(0.0));

  const Pose p{1.5, -2.0, 0.7};
  CHECK(step_kinematics(p, {0, 0}, 0.1) == p);

  const Pose b = step_kinematics({0, 0, 0}, {0, kPi}, 1.0, {1.0, 4.0});
  CHECK(b.heading == doctest::Approx(kPi));
  CHECK(b.heading > 0.0);
}

TEST_CASE("step_kinematics clamps to limits") {
  const Pose a = step_kinematics({0, 0, 0}, {5.0, 0}, 1.0, {1.0, 1.5});
  CHECK(a.x == doctest::Approx(1.0));
  const Pose b = step_kinematics({0, 0, 0}, {0, -9.0}, 1.0, {1.0, 1.5});
  CHECK(b.heading == doctest::Approx(-1.5));
}

TEST_CASE("step_kinematics properties") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Pose p{rng.uniform() * 10 - 5, rng.uniform() * 10 - 5, (rng.uniform() * 2 - 1) * kPi};
    for (int k = 0; k < 20; ++k) {
      p = step_kinematics(p, {rng.uniform() * 2 - 1, (rng.uniform() * 2 - 1) * 1.5}, 0.1);
      CHECK(p.heading > -kPi);
      CHECK(p.heading <= kPi);
    }
    const double v = rng.uniform();
    const Pose full = step_kinematics(p, {v, 0}, 0.1);
    const Pose half = step_kinematics(step_kinematics(p, {v, 0}, 0.05), {v, 0}, 0.05);
    CHECK(std::abs(full.x - half.x) <= 1e-9);
    CHECK(std::abs(full.y - half.y) <= 1e-9);
    CHECK(full.heading == half.heading);
  }
}

TEST_CASE("normalize_angle range") {
  CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(0.0) == 0.0);
  CHECK(normalize_angle(kTwoPi + 0.5) == doctest::Approx(0.5));
}

TEST_CASE("area_of") {
  const Scenario s = parse_scenario(minimal_scenario_json());
  CHECK(area_of({0, 0}, s) == std::optional<std::string>("room"));
  CHECK_FALSE(area_of({50, 50}, s).has_value());

  std::vector<Area> two = {{"b", "b", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}},
                           {"a", "a", {{1, 0}, {2, 0}, {2, 1}, {1, 1}}, {}}};
  CHECK(area_of({1.0, 0.5}, two) == std::optional<std::string>("a"));
  CHECK(area_of({0.5, 0.5}, two) == std::optional<std::string>("b"));
  for (int i = 0; i < 10; ++i) CHECK(area_of({1.0, 0.5}, two) == area_of({1.0, 0.5}, two));
}

TEST_CASE("bearing_to") {
  CHECK(bearing_to({0, 0, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(bearing_to({0, 0, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(bearing_to({0, 0, kPi / 2}, {0, 1}) == doctest::Approx(0.0));
  CHECK(bearing_to({0, 0, 0}, {-1, 0}) == doctest::Approx(kPi));
  CHECK_THROWS_AS(bearing_to({1, 2, 0}, {1, 2}), DegenerateTarget);
}

TEST_CASE("polygon helpers") {
  const std::vector<Vec2> sq = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  CHECK(point_in_polygon({2, 1}, sq));
  CHECK(point_in_polygon({0, 0}, sq));
  CHECK_FALSE(point_in_polygon({2.01, 1}, sq));
  CHECK(is_simple_polygon(sq));
  const Vec2 c = vertex_average(sq);
  CHECK(c.x == doctest::Approx(1.0));
  CHECK(c.y == doctest::Approx(1.0));
}
