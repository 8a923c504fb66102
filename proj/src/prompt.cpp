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

#include "intent/prompt.hpp"

#include <cctype>
#include <map>

#include "intent/errors.hpp"

namespace intent {

namespace {

const std::map<std::string, std::pair<std::string, std::string>>&
adjectives() {
  static const std::map<std::string, std::pair<std::string, std::string>> m = {
      {"red", {"color", "red"}},       {"blue", {"color", "blue"}},
      {"green", {"color", "green"}},   {"yellow", {"color", "yellow"}},
      {"white", {"color", "white"}},   {"black", {"color", "black"}},
      {"orange", {"color", "orange"}}, {"purple", {"color", "purple"}},
      {"pink", {"color", "pink"}},     {"brown", {"color", "brown"}},
      {"grey", {"color", "grey"}},     {"gray", {"color", "grey"}},
      {"silver", {"color", "silver"}}, {"small", {"size", "small"}},
      {"little", {"size", "small"}},   {"tiny", {"size", "small"}},
      {"large", {"size", "large"}},    {"big", {"size", "large"}},
  };
  return m;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct Marker {
  Predicate predicate;
  std::size_t length;
};

std::optional<Marker> marker_at(const std::vector<std::string>& t,
                                std::size_t i) {
  auto is = [&](std::size_t k, const char* w) {
    return i + k < t.size() && t[i + k] == w;
  };
  if (is(0, "next") && is(1, "to")) return Marker{Predicate::near, 2};
  if (is(0, "near") || is(0, "beside")) return Marker{Predicate::near, 1};
  if (is(0, "on") && is(1, "top") && is(2, "of")) {
    return Marker{Predicate::on, 3};
  }
  if (is(0, "on")) return Marker{Predicate::on, 1};
  return std::nullopt;
}

std::string join(const std::vector<std::string>& t, std::size_t b,
                 std::size_t e) {
  std::string s;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b) s.push_back('_');
    s += t[i];
  }
  return s;
}

// Plural-tolerant lookup of a phrase in `lookup`.
template <typename Fn>
std::optional<std::string> lookup_phrase(const std::string& phrase,
                                         Fn&& lookup) {
  if (auto r = lookup(phrase)) return r;
  if (phrase.size() > 1 && phrase.back() == 's') {
    if (auto r = lookup(phrase.substr(0, phrase.size() - 1))) return r;
    if (phrase.size() > 2 && phrase.ends_with("es")) {
      if (auto r = lookup(phrase.substr(0, phrase.size() - 2))) return r;
    }
  }
  return std::nullopt;
}

struct Match {
  std::string node;
  std::size_t begin;
  std::size_t end;
};

// Greedy longest-first matching of vocabulary phrases over [b, e).
template <typename Fn>
std::vector<Match> match_all(const std::vector<std::string>& t, std::size_t b,
                             std::size_t e, std::size_t max_len, Fn&& lookup) {
  std::vector<Match> out;
  std::size_t i = b;
  while (i < e) {
    bool found = false;
    for (std::size_t len = std::min(max_len, e - i); len >= 1; --len) {
      if (auto node = lookup_phrase(join(t, i, i + len), lookup)) {
        out.push_back({*node, i, i + len});
        i += len;
        found = true;
        break;
      }
    }
    if (!found) ++i;
  }
  return out;
}

}  // namespace

const char* to_string(PromptKind k) {
  switch (k) {
    case PromptKind::specific: return "specific";
    case PromptKind::categorical: return "categorical";
    case PromptKind::relational: return "relational";
  }
  return "specific";
}

PromptQuery parse_prompt(std::string_view text, const Ontology& ontology,
                         std::span<const Area> areas) {
  const auto tokens = tokenize(text);
  if (tokens.empty()) throw UnparsablePrompt("empty prompt");

  std::map<std::string, std::string> area_names;
  for (const auto& a : areas) {
    area_names[join(tokenize(a.name), 0, tokenize(a.name).size())] = a.id;
    std::string id = a.id;
    for (auto& c : id) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    area_names.emplace(id, a.id);
  }
  auto find_node = [&](const std::string& p) { return ontology.resolve(p); };
  auto find_area = [&](const std::string& p) -> std::optional<std::string> {
    auto it = area_names.find(p);
    if (it == area_names.end()) return std::nullopt;
    return it->second;
  };

  struct Span {
    std::size_t begin;
    std::size_t end;
    std::optional<Predicate> predicate;
  };
  std::vector<Span> spans{{0, tokens.size(), std::nullopt}};
  for (std::size_t i = 0; i < tokens.size();) {
    if (auto m = marker_at(tokens, i)) {
      spans.back().end = i;
      spans.push_back({i + m->length, tokens.size(), m->predicate});
      i += m->length;
    } else {
      ++i;
    }
  }

  PromptQuery q;
  q.raw_text = std::string(text);

  const Span& head = spans.front();
  std::optional<std::string> last_label;
  std::optional<std::string> last_category;
  for (const auto& m : match_all(tokens, head.begin, head.end, 4, find_node)) {
    if (ontology.is_label(m.node)) {
      last_label = m.node;
    } else if (ontology.is_category(m.node)) {
      last_category = m.node;
    }
  }
  for (std::size_t i = head.begin; i < head.end; ++i) {
    auto it = adjectives().find(tokens[i]);
    if (it != adjectives().end()) {
      q.attribute_constraints[it->second.first] = it->second.second;
    }
  }

  for (std::size_t s = 1; s < spans.size(); ++s) {
    const Span& sp = spans[s];
    const auto area_hits = match_all(tokens, sp.begin, sp.end, 4, find_area);
    if (!area_hits.empty()) {
      q.relation_constraints.push_back(
          {*sp.predicate, area_hits.front().node, true});
      continue;
    }
    const auto hits = match_all(tokens, sp.begin, sp.end, 4, find_node);
    if (!hits.empty()) {
      q.relation_constraints.push_back({*sp.predicate, hits.back().node, false});
    }
  }

  if (last_label) {
    q.noun = last_label;
  } else if (last_category) {
    q.category = last_category;
  }
  if (!q.noun && !q.category && q.relation_constraints.empty()) {
    throw UnparsablePrompt("no ontology noun or category in '" +
                           std::string(text) + "'");
  }
  if (!q.relation_constraints.empty()) {
    q.kind = PromptKind::relational;
  } else if (q.noun) {
    q.kind = PromptKind::specific;
  } else {
    q.kind = PromptKind::categorical;
  }
  return q;
}

}  // namespace intent
