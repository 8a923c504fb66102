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

#ifndef INTENT_SERVICE_SERVER_HPP_
#define INTENT_SERVICE_SERVER_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "json.hpp"

#include "intent/service/session.hpp"

namespace intent::service {

struct ServerOptions {
  std::string bind = "127.0.0.1";
  std::uint16_t port = 8080;  // 0 picks a free port
  std::filesystem::path scenario_dir;
  int io_threads = 1;
};

struct HttpReply {
  int status = 200;
  nlohmann::json body;
};

// REST routes, independent of the transport:
//   POST /sessions         open a session from a config body
//   GET  /sessions/{id}    session metadata
//   GET  /scenarios        bundled scenario files
HttpReply handle_http(SessionManager& manager, std::string_view method,
                      std::string_view target, const std::string& body);

// HTTP + WebSocket endpoint on one port. WebSocket clients attach to
// /sessions/{id}/ws.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();

  void start();
  void stop();
  std::uint16_t port() const;
  SessionManager& sessions();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Runs until SIGINT or SIGTERM.
int serve(const ServerOptions& options);

}  // namespace intent::service

#endif  // INTENT_SERVICE_SERVER_HPP_
