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

#include "intent/external_scorer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "httplib.h"

#include "intent/errors.hpp"

namespace intent {

using nlohmann::json;

void EndpointConfig::validate() const {
  if (!url.starts_with("http://")) {
    throw std::invalid_argument("endpoint url must start with http://");
  }
  if (!(timeout_s > 0.0)) {
    throw std::invalid_argument("endpoint timeout must be positive");
  }
}

json build_score_request(const PromptQuery& query, const TrackMemory& memory) {
  json candidates = json::array();
  for (const auto& [id, t] : memory.tracks) {
    json rels = json::array();
    for (const auto& r : t.descriptor.relations) {
      rels.push_back({{"predicate", to_string(r.predicate)}, {"target", r.target}});
    }
    candidates.push_back({{"id", id},
                          {"label", t.descriptor.label},
                          {"category", t.descriptor.category},
                          {"attributes", t.descriptor.attributes},
                          {"relations", rels}});
  }
  return {{"prompt", query.raw_text}, {"candidates", candidates}};
}

ScoreMap ranking_to_scores(const std::vector<std::string>& ranking,
                           const TrackMemory& memory, double epsilon) {
  ScoreMap out;
  for (const auto& [id, t] : memory.tracks) {
    auto it = std::find(ranking.begin(), ranking.end(), t.descriptor.label);
    out[id] = it == ranking.end()
                  ? epsilon
                  : 1.0 / static_cast<double>(it - ranking.begin() + 1);
  }
  return out;
}

ExternalScores parse_score_response(const std::string& body,
                                    const TrackMemory& memory, double epsilon) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw MalformedResponse(std::string("scorer response: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("scores") || !doc["scores"].is_array() ||
      !doc.contains("ranking") || !doc["ranking"].is_array()) {
    throw MalformedResponse("scorer response needs 'scores' and 'ranking' lists");
  }
  ExternalScores out;
  for (const auto& [id, t] : memory.tracks) out.vlm[id] = epsilon;
  for (const auto& entry : doc["scores"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
        !entry.contains("score") || !entry["score"].is_number()) {
      throw MalformedResponse("scorer response: bad score entry");
    }
    const auto id = entry["id"].get<std::string>();
    const double s = entry["score"].get<double>();
    if (!std::isfinite(s)) throw MalformedResponse("scorer response: non-finite score");
    if (auto it = out.vlm.find(id); it != out.vlm.end()) {
      it->second = std::clamp(s, 0.0, 1.0);
    }
  }
  for (const auto& label : doc["ranking"]) {
    if (!label.is_string()) {
      throw MalformedResponse("scorer response: ranking must be labels");
    }
    out.ranking.push_back(label.get<std::string>());
  }
  return out;
}

namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host:port
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

}  // namespace

ExternalScores external_score(const PromptQuery& query,
                              const TrackMemory& memory,
                              const EndpointConfig& endpoint, double epsilon) {
  const auto [origin, path] = split_url(endpoint.url);
  httplib::Client client(origin);
  const auto whole = std::chrono::duration<double>(endpoint.timeout_s);
  const auto secs = static_cast<time_t>(endpoint.timeout_s);
  const auto usecs = static_cast<time_t>(
      std::llround((endpoint.timeout_s - static_cast<double>(secs)) * 1e6));
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  const auto start = std::chrono::steady_clock::now();
  auto res = client.Post(path, build_score_request(query, memory).dump(),
                         "application/json");
  const auto elapsed = std::chrono::steady_clock::now() - start;
  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout ||
        ((err == httplib::Error::Read || err == httplib::Error::Write) &&
         elapsed >= 0.9 * whole)) {
      throw BackendTimeout("scorer timed out after " +
                           std::to_string(endpoint.timeout_s) + " s");
    }
    throw TransportError("scorer transport error: " + httplib::to_string(err));
  }
  if (elapsed > whole) throw BackendTimeout("scorer exceeded its deadline");
  if (res->status != 200) {
    throw TransportError("scorer returned HTTP " + std::to_string(res->status));
  }
  return parse_score_response(res->body, memory, epsilon);
}

ScoreResult ExternalScorer::score(const PromptQuery& query,
                                  const TrackMemory& memory,
                                  const ScoringContext&) {
  count_call();
  ExternalScores ext = external_score(query, memory, endpoint_, epsilon_);
  return {std::move(ext.vlm), ranking_to_scores(ext.ranking, memory, epsilon_)};
}

}  // namespace intent
