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

#include "doctest.h"
#include "intent/errors.hpp"
#include "intent/ontology.hpp"
#include "support.hpp"

using namespace intent;
using nlohmann::json;

TEST_CASE("ontology tree queries") {
  const Ontology& o = testing::reference_ontology();
  CHECK(o.is_label("mug"));
  CHECK(o.is_category("drink"));
  CHECK_FALSE(o.is_label("drink"));
  CHECK(o.parent("soda_can") == std::optional<std::string>("drink"));
  CHECK(o.descends_from("soda_can", "food"));
  CHECK(o.descends_from("food", "food"));
  CHECK_FALSE(o.descends_from("food", "drink"));
  CHECK(o.group_of("soda_can") == "food");
  CHECK(o.group_of("teddy_bear") == "toys");
  CHECK(o.group_of("food") == "food");
  const auto sib = o.siblings("mug");
  CHECK(std::find(sib.begin(), sib.end(), "cup") != sib.end());
  CHECK(std::find(sib.begin(), sib.end(), "mug") == sib.end());
  CHECK(std::is_sorted(sib.begin(), sib.end()));
}

TEST_CASE("ontology synonyms and vocabulary") {
  const Ontology& o = testing::reference_ontology();
  CHECK(o.resolve("tv remote") == std::optional<std::string>("remote"));
  CHECK(o.resolve("TV Remote") == std::optional<std::string>("remote"));
  CHECK(o.resolve("teddy bear") == std::optional<std::string>("teddy_bear"));
  CHECK(o.resolve("teddy_bear") == std::optional<std::string>("teddy_bear"));
  CHECK_FALSE(o.resolve("spaceship").has_value());
  CHECK(o.are_synonyms("remote", "remote_control"));
  CHECK(o.vocabulary().count("mug") == 1);
}

TEST_CASE("ontology validation") {
  CHECK_THROWS_AS(Ontology::from_json(json{{"categories", {{"a", "b"}}}}),
                  ValidationError);
  CHECK_THROWS_AS(
      Ontology::from_json(json{{"categories", {{"a", "b"}, {"b", "a"}}}}),
      ValidationError);
  CHECK_THROWS_AS(Ontology::from_json(json{{"categories", {{"a", 3}}}}),
                  ParseError);
  CHECK_THROWS_AS(Ontology::from_json(json{{"categories", json::object()},
                                           {"extra", 1}}),
                  ParseError);
  CHECK_THROWS_AS(Ontology::from_json(json{{"categories", {{"a", nullptr}}},
                                           {"synonyms", {{"zzz", {"q"}}}}}),
                  ValidationError);
}

TEST_CASE("scenario vocabulary check") {
  const auto w = testing::reference_world();
  Scenario s = *w.scenario;
  s.objects[0].label = "spaceship";
  CHECK_THROWS_AS(check_scenario_vocabulary(s, *w.ontology), ValidationError);
  s = *w.scenario;
  s.objects[0].category = "toys";
  CHECK_THROWS_AS(check_scenario_vocabulary(s, *w.ontology), ValidationError);
}
