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

#ifndef INTENT_PROMPT_HPP_
#define INTENT_PROMPT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intent/ontology.hpp"
#include "intent/world.hpp"

namespace intent {

enum class PromptKind { specific, categorical, relational };

const char* to_string(PromptKind k);

struct RelationConstraint {
  Predicate predicate = Predicate::near;
  std::string target;  // ontology node id, or area id when target_is_area
  bool target_is_area = false;

  friend bool operator==(const RelationConstraint&,
                         const RelationConstraint&) = default;
};

struct PromptQuery {
  std::string raw_text;
  std::optional<std::string> noun;      // ontology label
  std::optional<std::string> category;  // ontology category node
  AttributeMap attribute_constraints;
  std::vector<RelationConstraint> relation_constraints;
  PromptKind kind = PromptKind::specific;

  friend bool operator==(const PromptQuery&, const PromptQuery&) = default;
};

// Closed rule grammar over the ontology:
//  - the text is split at relation markers ("next to", "near", "beside",
//    "on"); the head segment names the goal, each following segment names
//    one relation target (area name first, then ontology word);
//  - the last ontology label in the head is the noun; failing that the last
//    category word is the category;
//  - colour and size adjectives in the head become attribute constraints.
// Throws UnparsablePrompt when neither a goal word nor a relation is found.
PromptQuery parse_prompt(std::string_view text, const Ontology& ontology,
                         std::span<const Area> areas = {});

}  // namespace intent

#endif  // INTENT_PROMPT_HPP_
