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

#include "intent/ontology.hpp"

#include <algorithm>
#include <cctype>

#include "intent/errors.hpp"
#include "intent/json_util.hpp"

namespace intent {

using nlohmann::json;

namespace {

// "soda can", "Soda_Can" -> "soda_can"
std::string canonical_phrase(std::string_view w) {
  std::string out;
  for (char c : w) {
    if (c == ' ' || c == '_' || c == '-') {
      if (!out.empty() && out.back() != '_') out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

}  // namespace

Ontology Ontology::from_json(const json& doc) {
  check_keys<ParseError>(doc, {"categories", "synonyms"}, "ontology");
  if (!doc.contains("categories") || !doc["categories"].is_object()) {
    throw ParseError("ontology.categories: expected an object");
  }
  Ontology o;
  for (const auto& [node, parent] : doc["categories"].items()) {
    if (parent.is_null()) {
      o.parent_[node] = std::nullopt;
    } else if (parent.is_string()) {
      o.parent_[node] = parent.get<std::string>();
    } else {
      throw ParseError("ontology.categories." + node +
                       ": parent must be a string or null");
    }
  }
  for (const auto& [node, parent] : o.parent_) {
    if (!parent) continue;
    if (!o.parent_.count(*parent)) {
      throw ValidationError("ontology.categories." + node,
                            "unknown parent '" + *parent + "'");
    }
    o.children_[*parent].push_back(node);
  }
  // Acyclic: every parent chain ends at a root within |nodes| steps.
  for (const auto& [node, parent] : o.parent_) {
    std::optional<std::string> cur = parent;
    std::size_t steps = 0;
    while (cur) {
      if (*cur == node || ++steps > o.parent_.size()) {
        throw ValidationError("ontology.categories." + node,
                              "category tree has a cycle");
      }
      cur = o.parent_.at(*cur);
    }
  }
  for (auto& [node, kids] : o.children_) std::sort(kids.begin(), kids.end());

  if (doc.contains("synonyms")) {
    if (!doc["synonyms"].is_object()) {
      throw ParseError("ontology.synonyms: expected an object");
    }
    for (const auto& [label, syns] : doc["synonyms"].items()) {
      if (!o.parent_.count(label)) {
        throw ValidationError("ontology.synonyms." + label,
                              "synonyms for unknown node");
      }
      if (!syns.is_array()) {
        throw ParseError("ontology.synonyms." + label + ": expected a list");
      }
      for (const auto& s : syns) {
        if (!s.is_string()) {
          throw ParseError("ontology.synonyms." + label + ": expected strings");
        }
        const std::string phrase = canonical_phrase(s.get<std::string>());
        o.synonyms_[label].insert(phrase);
        o.phrase_to_node_.emplace(phrase, label);
        o.vocabulary_.insert(phrase);
      }
    }
  }
  for (const auto& [node, parent] : o.parent_) {
    o.vocabulary_.insert(node);
    o.phrase_to_node_[canonical_phrase(node)] = node;
  }
  return o;
}

Ontology Ontology::load(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

bool Ontology::is_node(std::string_view n) const {
  return parent_.count(std::string(n)) > 0;
}

bool Ontology::is_label(std::string_view n) const {
  return is_node(n) && !children_.count(std::string(n));
}

bool Ontology::is_category(std::string_view n) const {
  return children_.count(std::string(n)) > 0;
}

std::optional<std::string> Ontology::parent(std::string_view n) const {
  auto it = parent_.find(std::string(n));
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

bool Ontology::descends_from(std::string_view node,
                             std::string_view ancestor) const {
  std::optional<std::string> cur = std::string(node);
  while (cur) {
    if (*cur == ancestor) return true;
    auto it = parent_.find(*cur);
    if (it == parent_.end()) return false;
    cur = it->second;
  }
  return false;
}

std::vector<std::string> Ontology::siblings(std::string_view label) const {
  std::vector<std::string> out;
  const auto p = parent(label);
  if (!p) return out;
  for (const auto& c : children_.at(*p)) {
    if (c != label && is_label(c)) out.push_back(c);
  }
  return out;
}

bool Ontology::are_synonyms(std::string_view a, std::string_view b) const {
  auto has = [this](std::string_view x, std::string_view y) {
    auto it = synonyms_.find(std::string(x));
    return it != synonyms_.end() && it->second.count(canonical_phrase(y)) > 0;
  };
  return has(a, b) || has(b, a);
}

std::optional<std::string> Ontology::resolve(std::string_view word) const {
  auto it = phrase_to_node_.find(canonical_phrase(word));
  if (it == phrase_to_node_.end()) return std::nullopt;
  return it->second;
}

std::string Ontology::group_of(std::string_view node) const {
  std::string cur(node);
  for (;;) {
    const auto p = parent(cur);
    if (!p) return cur;
    cur = *p;
  }
}

void check_scenario_vocabulary(const Scenario& scenario,
                               const Ontology& ontology) {
  for (std::size_t i = 0; i < scenario.objects.size(); ++i) {
    const auto& o = scenario.objects[i];
    const std::string path = "objects[" + std::to_string(i) + "]";
    if (!ontology.is_label(o.label)) {
      throw ValidationError(path + ".label",
                            "label '" + o.label + "' is not an ontology label");
    }
    if (ontology.parent(o.label) != o.category) {
      throw ValidationError(path + ".category",
                            "category '" + o.category +
                                "' is not the ontology parent of '" + o.label +
                                "'");
    }
  }
}

}  // namespace intent
