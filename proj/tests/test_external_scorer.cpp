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

#include <chrono>
#include <functional>
#include <mutex>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "support.hpp"

#include "intent/errors.hpp"
#include "intent/external_scorer.hpp"

namespace intent {
namespace {

using nlohmann::json;
using testing::make_track;

// Loopback scorer whose reply is set per test.
class FakeEndpoint {
 public:
  using Handler = std::function<void(const json&, httplib::Response&)>;

  explicit FakeEndpoint(Handler h) : handler_(std::move(h)) {
    server_.Post("/score", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard<std::mutex> lock(mu_);
      ++requests_;
      last_ = json::parse(req.body);
      handler_(last_, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  EndpointConfig config(double timeout_s = 2.0) const {
    return {"http://127.0.0.1:" + std::to_string(port_) + "/score", timeout_s};
  }
  int requests() {
    std::lock_guard<std::mutex> lock(mu_);
    return requests_;
  }
  json last() {
    std::lock_guard<std::mutex> lock(mu_);
    return last_;
  }

 private:
  httplib::Server server_;
  Handler handler_;
  std::thread thread_;
  std::mutex mu_;
  int requests_ = 0;
  json last_;
  int port_ = 0;
};

TrackMemory two_tracks() {
  TrackMemory m;
  m.tracks["m1"] = make_track("mug", "kitchenware", {1, 2}, 1, 1, {{"color", "red"}},
                              {{Predicate::on, "kitchen_counter"}});
  m.tracks["p1"] = make_track("plant", "decorations", {3, 4});
  return m;
}

PromptQuery mug_query() {
  PromptQuery q;
  q.raw_text = "the red mug";
  q.noun = "mug";
  return q;
}

void reply(httplib::Response& res, const json& body) {
  res.set_content(body.dump(), "application/json");
}

TEST_CASE("request carries the prompt and every descriptor") {
  const auto body = build_score_request(mug_query(), two_tracks());
  CHECK(body["prompt"] == "the red mug");
  REQUIRE(body["candidates"].size() == 2);
  const auto& c = body["candidates"][0];
  CHECK(c["id"] == "m1");
  CHECK(c["label"] == "mug");
  CHECK(c["category"] == "kitchenware");
  CHECK(c["attributes"]["color"] == "red");
  CHECK(c["relations"][0]["predicate"] == "on");
  CHECK(c["relations"][0]["target"] == "kitchen_counter");
}

TEST_CASE("well-formed scores pass through verbatim") {
  FakeEndpoint ep([](const json&, httplib::Response& res) {
    reply(res, {{"scores", {{{"id", "m1"}, {"score", 0.9}}, {{"id", "p1"}, {"score", 0.1}}}},
                {"ranking", {"mug", "plant"}}});
  });
  const auto m = two_tracks();
  const auto out = external_score(mug_query(), m, ep.config(), 1e-3);
  CHECK(out.vlm.at("m1") == 0.9);
  CHECK(out.vlm.at("p1") == 0.1);
  CHECK(out.ranking == std::vector<std::string>{"mug", "plant"});
  CHECK(ep.requests() == 1);
  CHECK(ep.last()["candidates"].size() == 2);

  const auto w = testing::reference_world();
  const ScoringContext ctx{*w.scenario, *w.ontology, 0.75};
  ExternalScorer scorer(ep.config(), 1e-3);
  const auto r = scorer.score(mug_query(), m, ctx);
  CHECK(r.vlm.at("m1") == 0.9);
  CHECK(r.llm.at("m1") == 1.0);
  CHECK(r.llm.at("p1") == 0.5);
  CHECK(scorer.calls() == 1);
  CHECK_FALSE(scorer.deterministic());
}

TEST_CASE("out-of-range scores are clamped and missing ones get the floor") {
  FakeEndpoint ep([](const json&, httplib::Response& res) {
    reply(res, {{"scores", {{{"id", "m1"}, {"score", 1.7}}, {{"id", "ghost"}, {"score", 0.5}}}},
                {"ranking", {"mug"}}});
  });
  const auto m = two_tracks();
  const auto out = external_score(mug_query(), m, ep.config(), 1e-3);
  CHECK(out.vlm.at("m1") == 1.0);
  CHECK(out.vlm.at("p1") == 1e-3);
  CHECK(out.vlm.count("ghost") == 0);
  const auto llm = ranking_to_scores(out.ranking, m, 1e-3);
  CHECK(llm.at("m1") == 1.0);
  CHECK(llm.at("p1") == 1e-3);

  CHECK(parse_score_response(R"({"scores":[{"id":"p1","score":-0.4}],"ranking":[]})",
                             m, 1e-3).vlm.at("p1") == 0.0);
}

TEST_CASE("malformed responses are rejected") {
  const auto m = two_tracks();
  for (const char* body : {"not json", "[]", R"({"scores":[]})",
                           R"({"ranking":[]})",
                           R"({"scores":[{"id":"m1"}],"ranking":[]})",
                           R"({"scores":[{"id":1,"score":0.5}],"ranking":[]})",
                           R"({"scores":[],"ranking":[3]})"}) {
    CAPTURE(body);
    CHECK_THROWS_AS(parse_score_response(body, m, 1e-3), MalformedResponse);
  }

  FakeEndpoint ep([](const json&, httplib::Response& res) {
    res.set_content("{\"scores\": 5}", "application/json");
  });
  CHECK_THROWS_AS(external_score(mug_query(), m, ep.config(), 1e-3), MalformedResponse);
}

TEST_CASE("transport failures and deadlines map to backend errors") {
  const auto m = two_tracks();
  {
    FakeEndpoint ep([](const json&, httplib::Response& res) { res.status = 500; });
    CHECK_THROWS_AS(external_score(mug_query(), m, ep.config(), 1e-3), TransportError);
  }
  {
    FakeEndpoint ep([](const json&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      reply(res, {{"scores", json::array()}, {"ranking", json::array()}});
    });
    CHECK_THROWS_AS(external_score(mug_query(), m, ep.config(0.2), 1e-3), BackendTimeout);
    // Only one request per round, no retries.
    CHECK(ep.requests() == 1);
  }
  // Nothing listens on port 1.
  const EndpointConfig closed{"http://127.0.0.1:1/score", 0.5};
  try {
    external_score(mug_query(), m, closed, 1e-3);
    FAIL("expected an error");
  } catch (const BackendUnavailable&) {
  }
}

TEST_CASE("endpoint config is validated") {
  CHECK_NOTHROW(EndpointConfig{"http://localhost:9/x", 1.0}.validate());
  CHECK_THROWS(EndpointConfig{"localhost:9/x", 1.0}.validate());
  CHECK_THROWS(EndpointConfig{"http://localhost:9/x", 0.0}.validate());
}

}  // namespace
}  // namespace intent
