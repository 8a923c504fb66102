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

#include "intent/service/session.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "intent/errors.hpp"
#include "intent/json_util.hpp"

namespace intent::service {

using nlohmann::json;

Session::Session(std::string id, json config, SessionSetup setup,
                 SetupLoader loader)
    : id_(std::move(id)),
      loader_(std::move(loader)),
      config_(std::move(config)),
      setup_(std::move(setup)) {
  sim_ = build(setup_);
}

std::unique_ptr<Simulation> Session::build(const SessionSetup& s) const {
  auto backend = make_backend(s.cfg);
  const ScoringMode mode = backend && !backend->deterministic()
                               ? ScoringMode::asynchronous
                               : ScoringMode::synchronous;
  return std::make_unique<Simulation>(s.cfg, s.scenario, s.ontology, backend,
                                      mode);
}

void Session::broadcast_locked(std::string_view type, json payload) {
  const std::string frame = server_message(id_, seq_++, type, std::move(payload));
  for (const auto& [h, sink] : sinks_) sink(frame);
}

void Session::error_locked(const std::string& what) {
  broadcast_locked("error", what);
}

void Session::receive(std::string_view text) {
  ClientMessage m;
  try {
    m = parse_client_message(text);
  } catch (const ParseError& e) {
    std::lock_guard lock(mu_);
    error_locked(e.what());
    return;
  }
  if (m.session != id_) {
    std::lock_guard lock(mu_);
    error_locked("message.session: '" + m.session + "' is not this session");
    return;
  }
  enqueue(std::move(m));
}

void Session::enqueue(ClientMessage m) {
  std::lock_guard lock(mu_);
  if (m.type == ClientType::pause || m.type == ClientType::resume) {
    apply_control_locked(m);
    return;
  }
  queue_.push_back(std::move(m));
}

void Session::apply_control_locked(const ClientMessage& m) {
  if (m.type == ClientType::pause) {
    paused_ = true;
    idle_paused_ = false;
  } else {
    paused_ = false;
    started_ = true;
    idle_paused_ = false;
  }
  broadcast_locked("tick_state", tick_state_json(*sim_, paused_));
}

void Session::reset_locked(const std::optional<json>& config) {
  try {
    if (config) {
      SessionSetup s = loader_(*config);
      auto sim = build(s);
      setup_ = std::move(s);
      config_ = *config;
      sim_ = std::move(sim);
    } else {
      sim_ = build(setup_);
    }
  } catch (const Error& e) {
    error_locked(std::string("reset: ") + e.what());
  }
}

bool Session::tick() {
  std::lock_guard lock(mu_);
  if (paused_ || sim_->done()) return false;

  TickInput in;
  std::deque<ClientMessage> held;
  bool reset = false;
  for (auto& m : queue_) {
    switch (m.type) {
      case ClientType::command:
        in.cmd = m.command;
        break;
      case ClientType::prompt:
        in.prompt = m.text;
        break;
      case ClientType::decision:
        if (in.decision) {
          held.push_back(std::move(m));
        } else {
          in.decision = m.decision;
        }
        break;
      case ClientType::reset:
        reset_locked(m.config);
        reset = true;
        in = TickInput{};
        held.clear();
        break;
      default:
        break;
    }
  }
  queue_ = std::move(held);
  if (reset) broadcast_locked("tick_state", tick_state_json(*sim_, paused_));
  if (sim_->done()) return false;

  const TickRecord& r = sim_->step(in);
  for (const auto& tr : r.transitions) broadcast_locked("event", event_json(tr));
  broadcast_locked("tick_state", tick_state_json(*sim_, paused_));
  return true;
}

int Session::subscribe(Sink sink) {
  std::lock_guard lock(mu_);
  const int h = next_sink_++;
  sinks_[h] = std::move(sink);
  empty_since_.reset();
  if (!started_ || idle_paused_) {
    paused_ = false;
    started_ = true;
    idle_paused_ = false;
  }
  broadcast_locked("tick_state", tick_state_json(*sim_, paused_));
  return h;
}

void Session::unsubscribe(int handle) {
  std::lock_guard lock(mu_);
  if (sinks_.erase(handle) && sinks_.empty()) empty_since_ = Clock::now();
}

void Session::check_idle(Clock::time_point now, Clock::duration grace) {
  std::lock_guard lock(mu_);
  if (!sinks_.empty() || !empty_since_ || paused_) return;
  if (now - *empty_since_ >= grace) {
    paused_ = true;
    idle_paused_ = true;
  }
}

bool Session::paused() const {
  std::lock_guard lock(mu_);
  return paused_;
}

std::uint64_t Session::next_seq() const {
  std::lock_guard lock(mu_);
  return seq_;
}

std::size_t Session::queued() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

json Session::snapshot() const {
  std::lock_guard lock(mu_);
  return tick_state_json(*sim_, paused_);
}

json Session::metadata() const {
  std::lock_guard lock(mu_);
  return {{"session", id_},
          {"scenario", setup_.scenario->name},
          {"tick", sim_->tick()},
          {"phase", to_string(sim_->assist().phase)},
          {"paused", paused_},
          {"done", sim_->done()},
          {"clients", sinks_.size()},
          {"prompt", sim_->prompt_text()},
          {"config", config_},
          {"world", to_json(*setup_.scenario)}};
}

SessionManager::SessionManager(std::filesystem::path scenario_dir)
    : scenario_dir_(std::move(scenario_dir)) {}

SessionManager::~SessionManager() { stop(); }

SessionSetup SessionManager::load(const json& config) const {
  SessionSetup s;
  try {
    if (!config.is_object()) throw ConfigError("session: expected a config object");
    s.cfg = parse_trial_config(config, scenario_dir_, false);
    s.scenario = std::make_shared<const Scenario>(load_scenario(s.cfg.scenario_path));
    s.ontology = std::make_shared<const Ontology>(
        Ontology::load(s.scenario->ontology_file()));
    check_scenario_vocabulary(*s.scenario, *s.ontology);
    validate(s.cfg, *s.scenario);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return s;
}

std::string SessionManager::open(const json& config) {
  SessionSetup setup = load(config);
  std::lock_guard lock(mu_);
  const std::string id = fmt::format("s{}", next_id_++);
  sessions_[id] = std::make_shared<Session>(
      id, config, std::move(setup),
      [this](const json& j) { return load(j); });
  return id;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

json SessionManager::scenarios() const {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(scenario_dir_, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  json out = json::array();
  for (const auto& f : files) {
    json entry = {{"file", f.filename().string()}};
    try {
      const Scenario s = load_scenario(f);
      entry["name"] = s.name;
      entry["areas"] = s.areas.size();
      entry["objects"] = s.objects.size();
    } catch (const Error& e) {
      entry["error"] = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

void SessionManager::tick_all(Clock::time_point now) {
  std::vector<std::shared_ptr<Session>> live;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, s] : sessions_) live.push_back(s);
  }
  for (const auto& s : live) {
    s->check_idle(now);
    s->tick();
  }
}

void SessionManager::start(std::chrono::milliseconds period) {
  if (running_.exchange(true)) return;
  runner_ = std::thread([this, period] {
    auto next = Clock::now();
    while (running_.load()) {
      next += period;
      tick_all(Clock::now());
      std::this_thread::sleep_until(next);
    }
  });
}

void SessionManager::stop() {
  if (!running_.exchange(false)) return;
  if (runner_.joinable()) runner_.join();
}

}  // namespace intent::service
