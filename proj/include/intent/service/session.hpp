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

#ifndef INTENT_SERVICE_SESSION_HPP_
#define INTENT_SERVICE_SESSION_HPP_

#include <atomic>
#include <chrono>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "intent/config.hpp"
#include "intent/ontology.hpp"
#include "intent/service/protocol.hpp"
#include "intent/simulation.hpp"

namespace intent::service {

using Clock = std::chrono::steady_clock;

// Config, scenario and ontology for one session, resolved from JSON.
struct SessionSetup {
  TrialConfig cfg;
  std::shared_ptr<const Scenario> scenario;
  std::shared_ptr<const Ontology> ontology;
};
using SetupLoader = std::function<SessionSetup(const nlohmann::json&)>;

// One live simulation. Client frames are queued and drained once per tick;
// every outgoing frame takes the next value of a single sequence counter.
class Session {
 public:
  using Sink = std::function<void(const std::string&)>;

  Session(std::string id, nlohmann::json config, SessionSetup setup,
          SetupLoader loader);

  const std::string& id() const { return id_; }

  // Parses and queues a client frame; pause and resume act immediately.
  // Malformed frames are answered with an error frame.
  void receive(std::string_view text);
  void enqueue(ClientMessage m);

  // Drains the queue and advances one tick. No-op while paused or after the
  // trial ended. Returns whether a tick ran.
  bool tick();

  // Subscribers receive every outgoing frame. The first subscriber starts
  // the clock; a new subscriber is sent a snapshot.
  int subscribe(Sink sink);
  void unsubscribe(int handle);

  // Pauses the clock once no client has been connected for the grace period.
  void check_idle(Clock::time_point now,
                  Clock::duration grace = std::chrono::seconds(1));

  bool paused() const;
  std::uint64_t next_seq() const;
  std::size_t queued() const;
  nlohmann::json metadata() const;
  nlohmann::json snapshot() const;

 private:
  void broadcast_locked(std::string_view type, nlohmann::json payload);
  void error_locked(const std::string& what);
  void apply_control_locked(const ClientMessage& m);
  void reset_locked(const std::optional<nlohmann::json>& config);
  std::unique_ptr<Simulation> build(const SessionSetup& s) const;

  const std::string id_;
  SetupLoader loader_;
  mutable std::mutex mu_;
  nlohmann::json config_;
  SessionSetup setup_;
  std::unique_ptr<Simulation> sim_;
  std::deque<ClientMessage> queue_;
  bool paused_ = true;
  bool started_ = false;       // the clock ran at least once
  bool idle_paused_ = false;   // paused by the disconnect grace rule
  std::uint64_t seq_ = 0;
  std::map<int, Sink> sinks_;
  int next_sink_ = 0;
  std::optional<Clock::time_point> empty_since_;
};

// Owns sessions and the 10 Hz clock thread.
class SessionManager {
 public:
  explicit SessionManager(std::filesystem::path scenario_dir);
  ~SessionManager();

  // config: TrialConfig JSON without an operator profile. Relative scenario
  // paths resolve against the scenario directory. Throws ConfigError.
  std::string open(const nlohmann::json& config);
  std::shared_ptr<Session> find(const std::string& id) const;
  std::vector<std::string> ids() const;
  nlohmann::json scenarios() const;
  const std::filesystem::path& scenario_dir() const { return scenario_dir_; }

  // One pass of the clock over all sessions (the runner calls this).
  void tick_all(Clock::time_point now);
  void start(std::chrono::milliseconds period = std::chrono::milliseconds(100));
  void stop();

 private:
  SessionSetup load(const nlohmann::json& config) const;

  std::filesystem::path scenario_dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  int next_id_ = 1;
  std::atomic<bool> running_{false};
  std::thread runner_;
};

}  // namespace intent::service

#endif  // INTENT_SERVICE_SESSION_HPP_
