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

#include "intent/service/server.hpp"

#include <deque>
#include <iostream>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "intent/errors.hpp"

namespace intent::service {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

namespace {

std::vector<std::string_view> split_path(std::string_view target) {
  const auto q = target.find('?');
  if (q != std::string_view::npos) target = target.substr(0, q);
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos < target.size()) {
    if (target[pos] == '/') {
      ++pos;
      continue;
    }
    const auto end = target.find('/', pos);
    const auto stop = end == std::string_view::npos ? target.size() : end;
    parts.push_back(target.substr(pos, stop - pos));
    pos = stop;
  }
  return parts;
}

// "/sessions/{id}/ws" -> id, else empty.
std::string ws_session_id(std::string_view target) {
  const auto p = split_path(target);
  if (p.size() == 3 && p[0] == "sessions" && p[2] == "ws") return std::string(p[1]);
  return {};
}

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket&& socket, std::shared_ptr<Session> session)
      : ws_(std::move(socket)), session_(std::move(session)) {}

  ~WsConnection() {
    if (handle_ >= 0) session_->unsubscribe(handle_);
  }

  void run(http::request<http::string_body> req) {
    ws_.set_option(
        websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&WsConnection::on_accept,
                                                    shared_from_this()));
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    ws_.text(true);
    std::weak_ptr<WsConnection> weak = shared_from_this();
    handle_ = session_->subscribe([weak](const std::string& frame) {
      if (auto self = weak.lock()) self->send(std::make_shared<const std::string>(frame));
    });
    do_read();
  }

  void send(std::shared_ptr<const std::string> frame) {
    net::post(ws_.get_executor(), [self = shared_from_this(), frame] {
      self->outbox_.push_back(frame);
      if (self->outbox_.size() == 1) self->do_write();
    });
  }

  void do_write() {
    ws_.async_write(net::buffer(*outbox_.front()),
                    beast::bind_front_handler(&WsConnection::on_write,
                                              shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      detach();
      return;
    }
    outbox_.pop_front();
    if (!outbox_.empty()) do_write();
  }

  void do_read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsConnection::on_read,
                                                      shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      detach();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    session_->receive(text);
    do_read();
  }

  void detach() {
    if (handle_ >= 0) {
      session_->unsubscribe(handle_);
      handle_ = -1;
    }
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Session> session_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> outbox_;
  int handle_ = -1;
};

http::response<http::string_body> make_response(
    const http::request<http::string_body>& req, const HttpReply& reply) {
  http::response<http::string_body> res{static_cast<http::status>(reply.status),
                                        req.version()};
  res.set(http::field::content_type, "application/json");
  res.set(http::field::access_control_allow_origin, "*");
  res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
  res.set(http::field::access_control_allow_headers, "Content-Type");
  res.keep_alive(req.keep_alive());
  res.body() = reply.body.is_null() ? std::string() : reply.body.dump();
  res.prepare_payload();
  return res;
}

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, SessionManager& manager)
      : stream_(std::move(socket)), manager_(manager) {}

  void run() {
    net::dispatch(stream_.get_executor(),
                  beast::bind_front_handler(&HttpConnection::do_read,
                                            shared_from_this()));
  }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     beast::bind_front_handler(&HttpConnection::on_read,
                                               shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;

    if (websocket::is_upgrade(req_)) {
      const std::string id = ws_session_id(std::string(req_.target()));
      auto session = id.empty() ? nullptr : manager_.find(id);
      if (session) {
        stream_.expires_never();
        std::make_shared<WsConnection>(stream_.release_socket(), session)
            ->run(std::move(req_));
        return;
      }
      write(make_response(req_, {404, {{"error", "unknown session"}}}));
      return;
    }

    HttpReply reply;
    if (req_.method() == http::verb::options) {
      reply = {204, nullptr};
    } else {
      reply = handle_http(manager_, std::string(req_.method_string()),
                          std::string(req_.target()), req_.body());
    }
    write(make_response(req_, reply));
  }

  void write(http::response<http::string_body> res) {
    auto sp = std::make_shared<http::response<http::string_body>>(std::move(res));
    http::async_write(stream_, *sp,
                      [self = shared_from_this(), sp](beast::error_code ec,
                                                      std::size_t) {
                        if (ec) return;
                        if (sp->need_eof()) {
                          self->stream_.socket().shutdown(
                              tcp::socket::shutdown_send, ec);
                          return;
                        }
                        self->do_read();
                      });
  }

  beast::tcp_stream stream_;
  SessionManager& manager_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

class Listener : public std::enable_shared_from_this<Listener> {
 public:
  Listener(net::io_context& ioc, tcp::endpoint ep, SessionManager& manager)
      : ioc_(ioc), acceptor_(net::make_strand(ioc)), manager_(manager) {
    acceptor_.open(ep.protocol());
    acceptor_.set_option(net::socket_base::reuse_address(true));
    acceptor_.bind(ep);
    acceptor_.listen(net::socket_base::max_listen_connections);
  }

  std::uint16_t port() const { return acceptor_.local_endpoint().port(); }
  void run() { do_accept(); }
  void close() {
    net::post(acceptor_.get_executor(), [self = shared_from_this()] {
      beast::error_code ec;
      self->acceptor_.close(ec);
    });
  }

 private:
  void do_accept() {
    acceptor_.async_accept(net::make_strand(ioc_),
                           beast::bind_front_handler(&Listener::on_accept,
                                                     shared_from_this()));
  }

  void on_accept(beast::error_code ec, tcp::socket socket) {
    if (ec == net::error::operation_aborted) return;
    if (!ec) std::make_shared<HttpConnection>(std::move(socket), manager_)->run();
    do_accept();
  }

  net::io_context& ioc_;
  tcp::acceptor acceptor_;
  SessionManager& manager_;
};

}  // namespace

HttpReply handle_http(SessionManager& manager, std::string_view method,
                      std::string_view target, const std::string& body) {
  const auto p = split_path(target);
  try {
    if (p.size() == 1 && p[0] == "scenarios") {
      if (method != "GET") return {405, {{"error", "method not allowed"}}};
      return {200, {{"scenarios", manager.scenarios()}}};
    }
    if (p.size() == 1 && p[0] == "sessions") {
      if (method == "GET") return {200, {{"sessions", manager.ids()}}};
      if (method != "POST") return {405, {{"error", "method not allowed"}}};
      json config;
      try {
        config = body.empty() ? json::object() : json::parse(body);
      } catch (const json::exception& e) {
        return {400, {{"error", std::string("body: ") + e.what()}}};
      }
      const std::string id = manager.open(config);
      auto s = manager.find(id);
      json meta = s->metadata();
      return {201, {{"session", id},
                    {"tick", meta["tick"]},
                    {"phase", meta["phase"]},
                    {"paused", meta["paused"]},
                    {"ws", "/sessions/" + id + "/ws"}}};
    }
    if (p.size() == 2 && p[0] == "sessions") {
      if (method != "GET") return {405, {{"error", "method not allowed"}}};
      auto s = manager.find(std::string(p[1]));
      if (!s) return {404, {{"error", "unknown session"}}};
      return {200, s->metadata()};
    }
  } catch (const ConfigError& e) {
    return {400, {{"error", e.what()}}};
  } catch (const std::exception& e) {
    return {500, {{"error", e.what()}}};
  }
  return {404, {{"error", "not found"}}};
}

struct Server::Impl {
  explicit Impl(ServerOptions o)
      : options(std::move(o)), manager(options.scenario_dir) {
    listener = std::make_shared<Listener>(
        ioc, tcp::endpoint(net::ip::make_address(options.bind), options.port),
        manager);
  }

  ServerOptions options;
  net::io_context ioc;
  SessionManager manager;
  std::shared_ptr<Listener> listener;
  std::optional<net::executor_work_guard<net::io_context::executor_type>> work;
  std::vector<std::thread> threads;
};

Server::Server(ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() { stop(); }

void Server::start() {
  if (!impl_->threads.empty()) return;
  impl_->listener->run();
  impl_->work.emplace(impl_->ioc.get_executor());
  for (int i = 0; i < std::max(1, impl_->options.io_threads); ++i) {
    impl_->threads.emplace_back([this] { impl_->ioc.run(); });
  }
  impl_->manager.start();
}

void Server::stop() {
  if (impl_->threads.empty()) return;
  impl_->manager.stop();
  impl_->listener->close();
  impl_->work.reset();
  impl_->ioc.stop();
  for (auto& t : impl_->threads) t.join();
  impl_->threads.clear();
}

std::uint16_t Server::port() const { return impl_->listener->port(); }

SessionManager& Server::sessions() { return impl_->manager; }

int serve(const ServerOptions& options) {
  Server server(options);
  server.start();
  std::cout << "listening on " << options.bind << ":" << server.port()
            << std::endl;
  net::io_context signals_ctx;
  net::signal_set signals(signals_ctx, SIGINT, SIGTERM);
  signals.async_wait([](beast::error_code, int) {});
  signals_ctx.run();
  server.stop();
  return 0;
}

}  // namespace intent::service
