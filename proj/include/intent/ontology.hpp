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

#ifndef INTENT_ONTOLOGY_HPP_
#define INTENT_ONTOLOGY_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "intent/world.hpp"

namespace intent {

// Category tree whose leaves are object labels. A label's category is its
// parent node; interior nodes are category words ("drink", "food").
//
// File form: {"categories": {node: parent-or-null}, "synonyms": {label: [..]}}
class Ontology {
 public:
  static Ontology from_json(const nlohmann::json& doc);
  static Ontology load(const std::filesystem::path& path);

  bool is_node(std::string_view n) const;
  bool is_label(std::string_view n) const;     // leaf node
  bool is_category(std::string_view n) const;  // interior node
  std::optional<std::string> parent(std::string_view n) const;

  // Reflexive: descends_from(x, x) is true.
  bool descends_from(std::string_view node, std::string_view ancestor) const;

  // Other labels sharing the parent of `label`, sorted.
  std::vector<std::string> siblings(std::string_view label) const;

  bool are_synonyms(std::string_view a, std::string_view b) const;

  // Maps a vocabulary word (label, category, or synonym phrase with spaces
  // or underscores) to its node id.
  std::optional<std::string> resolve(std::string_view word) const;

  // Root category containing the node (the node itself for a root).
  std::string group_of(std::string_view node) const;

  // Every node id plus every synonym phrase.
  const std::set<std::string>& vocabulary() const { return vocabulary_; }
  const std::map<std::string, std::optional<std::string>>& nodes() const {
    return parent_;
  }

 private:
  std::map<std::string, std::optional<std::string>> parent_;
  std::map<std::string, std::vector<std::string>> children_;
  std::map<std::string, std::set<std::string>> synonyms_;
  std::map<std::string, std::string> phrase_to_node_;
  std::set<std::string> vocabulary_;
};

// Every scenario label must be an ontology label whose parent is the
// object's declared category. Throws ValidationError.
void check_scenario_vocabulary(const Scenario& scenario,
                               const Ontology& ontology);

}  // namespace intent

#endif  // INTENT_ONTOLOGY_HPP_
