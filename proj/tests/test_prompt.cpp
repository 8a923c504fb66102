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
#include "intent/prompt.hpp"
#include "support.hpp"

using namespace intent;
using namespace intent::testing;

namespace {

PromptQuery parse(const std::string& text) {
  const auto w = reference_world();
  return parse_prompt(text, *w.ontology, w.scenario->areas);
}

}  // namespace

TEST_CASE("specific prompt with a colour") {
  const PromptQuery q = parse("Bring me the red mug");
  CHECK(q.kind == PromptKind::specific);
  CHECK(q.noun == std::optional<std::string>("mug"));
  CHECK_FALSE(q.category.has_value());
  CHECK(q.attribute_constraints == AttributeMap{{"color", "red"}});
  CHECK(q.relation_constraints.empty());
  CHECK(q.raw_text == "Bring me the red mug");
}

TEST_CASE("categorical prompt") {
  const PromptQuery q = parse("Pick up a drink");
  CHECK(q.kind == PromptKind::categorical);
  CHECK(q.category == std::optional<std::string>("drink"));
  CHECK_FALSE(q.noun.has_value());
}

TEST_CASE("relational prompt") {
  const PromptQuery q = parse("Fetch the cup next to the laptop.");
  CHECK(q.kind == PromptKind::relational);
  CHECK(q.noun == std::optional<std::string>("cup"));
  REQUIRE(q.relation_constraints.size() == 1);
  CHECK(q.relation_constraints[0].predicate == Predicate::near);
  CHECK(q.relation_constraints[0].target == "laptop");
  CHECK_FALSE(q.relation_constraints[0].target_is_area);
}

TEST_CASE("relation to an area") {
  const PromptQuery q = parse("Get the mug on the kitchen counter");
  CHECK(q.kind == PromptKind::relational);
  REQUIRE(q.relation_constraints.size() == 1);
  CHECK(q.relation_constraints[0].predicate == Predicate::on);
  CHECK(q.relation_constraints[0].target == "kitchen_counter");
  CHECK(q.relation_constraints[0].target_is_area);
}

TEST_CASE("prompt variants") {
  CHECK(parse("the television remote").noun == std::optional<std::string>("remote"));
  CHECK(parse("bring me the mugs").noun == std::optional<std::string>("mug"));
  CHECK(parse("a small toy").attribute_constraints == AttributeMap{{"size", "small"}});
  CHECK(parse("a small toy").category == std::optional<std::string>("toys"));
  CHECK(parse("Anything on the kitchen counter").kind == PromptKind::relational);
  CHECK(parse("I am thirsty, something to drink").category ==
        std::optional<std::string>("drink"));
  // The last noun wins.
  CHECK(parse("not the hammer, the screwdriver").noun ==
        std::optional<std::string>("screwdriver"));
}

TEST_CASE("unparsable prompts") {
  CHECK_THROWS_AS(parse("hello there"), UnparsablePrompt);
  CHECK_THROWS_AS(parse(""), UnparsablePrompt);
  CHECK_THROWS_AS(parse("something red"), UnparsablePrompt);
}

TEST_CASE("parse is deterministic") {
  for (const char* t : {"Bring me the red mug", "Pick up a drink",
                        "Fetch the cup next to the laptop."}) {
    CHECK(parse(t) == parse(t));
  }
}
