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

#ifndef INTENT_SERVICE_PROTOCOL_HPP_
#define INTENT_SERVICE_PROTOCOL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "intent/simulation.hpp"

namespace intent::service {

// Client -> server frame:
//   {"session": id, "seq": n, "type": "command", "command": {"v", "omega"}}
//   {"session": id, "seq": n, "type": "prompt", "text": "..."}
//   {"session": id, "seq": n, "type": "decision", "decision": "accept"}
//   {"session": id, "seq": n, "type": "pause" | "resume"}
//   {"session": id, "seq": n, "type": "reset", "config": {...}?}
enum class ClientType { command, prompt, decision, pause, resume, reset };

const char* to_string(ClientType t);

struct ClientMessage {
  std::string session;
  std::int64_t seq = 0;
  ClientType type = ClientType::command;
  VelocityCommand command;
  std::string text;
  Decision decision = Decision::accept;
  std::optional<nlohmann::json> config;
};

// Throws ParseError on malformed frames.
ClientMessage parse_client_message(std::string_view text);
nlohmann::json to_json(const ClientMessage& m);

// Server -> client frame: {"session", "seq", "type", <type>: payload} with
// type one of tick_state, event, error.
std::string server_message(const std::string& session, std::uint64_t seq,
                           std::string_view type, nlohmann::json payload);

nlohmann::json tick_state_json(const Simulation& sim, bool paused);
nlohmann::json event_json(const Transition& t);

}  // namespace intent::service

#endif  // INTENT_SERVICE_PROTOCOL_HPP_
