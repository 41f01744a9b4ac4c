// Copyright 2026 The ZSC Curriculum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zsc/service/server.hpp"

#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "zsc/common/error.hpp"
#include "zsc/common/rng.hpp"
#include "zsc/layoutgen/layout_text.hpp"

namespace zsc::service {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

namespace {

constexpr std::string_view kSessionsPrefix = "/api/sessions/";
constexpr std::string_view kPlaySuffix = "/play";

RestReply reply(int status, json body) { return {status, std::move(body)}; }
RestReply error_reply(int status, std::string_view message) {
  return {status, json{{"error", std::string(message)}}};
}

std::string_view strip_query(std::string_view target) {
  const auto q = target.find('?');
  return q == std::string_view::npos ? target : target.substr(0, q);
}

// "/api/sessions/{id}/play" -> id, else empty.
std::string_view play_session_id(std::string_view path) {
  if (!path.starts_with(kSessionsPrefix) || !path.ends_with(kPlaySuffix)) return {};
  path.remove_prefix(kSessionsPrefix.size());
  path.remove_suffix(kPlaySuffix.size());
  if (path.empty() || path.find('/') != std::string_view::npos) return {};
  return path;
}

}  // namespace

struct Server::Impl {
  explicit Impl(ServerConfig c) : config(std::move(c)), ioc(std::max(1, config.threads)), acceptor(ioc) {}

  ServerConfig config;
  mutable std::mutex mu;
  std::map<std::string, std::shared_ptr<PlaySession>, std::less<>> sessions;
  std::set<std::string, std::less<>> attached;
  std::uint64_t counter = 0;

  // Declared after the session state: destroying the context destroys any
  // parked connection, and those detach from `attached` on the way out.
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::vector<std::thread> workers;
  bool running = false;

  RestReply handle_rest(std::string_view method, std::string_view target, std::string_view body);
  RestReply create_session(std::string_view body);
  std::shared_ptr<PlaySession> find(std::string_view id) const {
    std::lock_guard lock(mu);
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }
  bool attach(std::string_view id) {
    std::lock_guard lock(mu);
    return attached.emplace(id).second;
  }
  void detach(std::string_view id) {
    std::lock_guard lock(mu);
    if (auto it = attached.find(id); it != attached.end()) attached.erase(it);
  }
  void do_accept();
};

RestReply Server::Impl::create_session(std::string_view body) {
  json req;
  try {
    req = json::parse(body);
  } catch (const json::exception&) {
    return error_reply(400, "body is not valid JSON");
  }
  if (!req.is_object()) return error_reply(400, "body must be an object");
  if (!req.contains("layout_id") || !req["layout_id"].is_string()) return error_reply(400, "layout_id is required");
  if (!req.contains("policy_id") || !req["policy_id"].is_string()) return error_reply(400, "policy_id is required");
  const std::string layout_id = req["layout_id"].get<std::string>();
  const std::string policy_id = req["policy_id"].get<std::string>();

  SessionConfig sc;
  for (const auto& l : config.layouts) {
    if (l->id() == layout_id) sc.layout = l;
  }
  if (!sc.layout) return error_reply(404, "unknown layout_id '" + layout_id + "'");
  for (const auto& p : config.policies) {
    if (p.id == policy_id) sc.policy = p.net;
  }
  if (!sc.policy) return error_reply(404, "unknown policy_id '" + policy_id + "'");
  sc.policy_id = policy_id;
  try {
    if (req.contains("seat")) {
      if (!req["seat"].is_number_integer()) return error_reply(400, "seat must be 0 or 1");
      sc.human_seat = req["seat"].get<int>();
      if (sc.human_seat != 0 && sc.human_seat != 1) return error_reply(400, "seat must be 0 or 1");
    }
    if (req.contains("mode")) {
      if (!req["mode"].is_string()) return error_reply(400, "mode must be realtime or stepped");
      sc.mode = parse_mode(req["mode"].get<std::string>());
    }
    sc.tick_ms = config.default_tick_ms;
    if (req.contains("tick_ms")) {
      if (!req["tick_ms"].is_number_integer() || req["tick_ms"].get<int>() < 1) {
        return error_reply(400, "tick_ms must be a positive integer");
      }
      sc.tick_ms = req["tick_ms"].get<int>();
    }
  } catch (const std::exception& e) {
    return error_reply(400, e.what());
  }
  sc.greedy = config.greedy;
  sc.kitchen = config.kitchen;

  std::lock_guard lock(mu);
  const std::uint64_t n = ++counter;
  sc.seed = derive_seed(config.seed, n);
  char id[32];
  std::snprintf(id, sizeof id, "s%04llu-%08llx", static_cast<unsigned long long>(n),
                static_cast<unsigned long long>(sc.seed & 0xffffffffULL));
  sc.id = id;
  if (!config.log_dir.empty()) sc.log_path = (std::filesystem::path(config.log_dir) / (sc.id + ".jsonl")).string();
  try {
    sessions.emplace(sc.id, std::make_shared<PlaySession>(sc));
  } catch (const std::exception& e) {
    return error_reply(500, e.what());
  }
  return reply(201, {{"session_id", sc.id}});
}

RestReply Server::Impl::handle_rest(std::string_view method, std::string_view target, std::string_view body) {
  const std::string_view path = strip_query(target);
  if (path == "/api/policies") {
    if (method != "GET") return error_reply(405, "use GET");
    json out = json::array();
    for (const auto& p : config.policies) {
      out.push_back({{"id", p.id}, {"iteration", p.iteration}, {"fingerprint", p.fingerprint}});
    }
    return reply(200, out);
  }
  if (path == "/api/layouts") {
    if (method != "GET") return error_reply(405, "use GET");
    json out = json::array();
    for (const auto& l : config.layouts) {
      out.push_back({{"id", l->id()},
                     {"width", l->width()},
                     {"height", l->height()},
                     {"text", layoutgen::serialize_layout(*l)}});
    }
    return reply(200, out);
  }
  if (path == "/api/sessions") {
    if (method != "POST") return error_reply(405, "use POST");
    return create_session(body);
  }
  if (path.starts_with(kSessionsPrefix)) {
    std::string_view id = path.substr(kSessionsPrefix.size());
    if (!id.empty() && id.find('/') == std::string_view::npos) {
      if (method != "GET") return error_reply(405, "use GET");
      auto s = find(id);
      if (!s) return error_reply(404, "unknown session '" + std::string(id) + "'");
      return reply(200, s->state_frame());
    }
  }
  return error_reply(404, "no route for " + std::string(path));
}

namespace {

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket&& socket, std::shared_ptr<PlaySession> session, Server::Impl& server)
      : ws_(std::move(socket)), timer_(ws_.get_executor()), session_(std::move(session)), server_(server) {}

  ~WsConnection() { server_.detach(session_->config().id); }

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&WsConnection::on_accept, shared_from_this()));
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    ws_.text(true);
    send(session_->state_frame());
    if (session_->config().mode == SessionMode::Realtime && !session_->done()) schedule_tick();
    do_read();
  }

  void schedule_tick() {
    timer_.expires_after(std::chrono::milliseconds(session_->config().tick_ms));
    timer_.async_wait(beast::bind_front_handler(&WsConnection::on_tick, shared_from_this()));
  }

  void on_tick(beast::error_code ec) {
    if (ec || closed_) return;
    if (auto frame = session_->tick()) {
      const bool done = frame->at("done").get<bool>();
      send(*frame);
      if (!done) schedule_tick();
    }
  }

  void do_read() { ws_.async_read(buffer_, beast::bind_front_handler(&WsConnection::on_read, shared_from_this())); }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      timer_.cancel();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    for (const auto& frame : session_->handle_message(text)) send(frame);
    do_read();
  }

  void send(const json& frame) {
    queue_.push_back(frame.dump());
    if (queue_.size() == 1) do_write();
  }

  void do_write() {
    ws_.async_write(net::buffer(queue_.front()),
                    beast::bind_front_handler(&WsConnection::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      closed_ = true;
      timer_.cancel();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) do_write();
  }

  websocket::stream<beast::tcp_stream> ws_;
  net::steady_timer timer_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  std::shared_ptr<PlaySession> session_;
  Server::Impl& server_;
  bool closed_ = false;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, Server::Impl& server) : stream_(std::move(socket)), server_(server) {}

  void run() {
    net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpConnection::do_read, shared_from_this()));
  }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpConnection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;

    if (websocket::is_upgrade(req_)) {
      const std::string_view path = strip_query(std::string_view(req_.target().data(), req_.target().size()));
      const std::string_view id = play_session_id(path);
      auto session = id.empty() ? nullptr : server_.find(id);
      if (!session) return respond(error_reply(404, "unknown session"));
      if (!server_.attach(id)) return respond(error_reply(409, "session already has a player attached"));
      stream_.expires_never();
      std::make_shared<WsConnection>(stream_.release_socket(), std::move(session), server_)->run(std::move(req_));
      return;
    }
    const auto method = req_.method_string();
    const auto target = req_.target();
    respond(server_.handle_rest(std::string_view(method.data(), method.size()),
                                std::string_view(target.data(), target.size()), req_.body()));
  }

  void respond(const RestReply& r) {
    auto res = std::make_shared<http::response<http::string_body>>(static_cast<http::status>(r.status),
                                                                    req_.version());
    res->set(http::field::server, "zsc");
    res->set(http::field::content_type, "application/json");
    res->keep_alive(req_.keep_alive());
    res->body() = r.body.dump();
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (!res->keep_alive()) {
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
        return;
      }
      self->do_read();
    });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  Server::Impl& server_;
};

}  // namespace

void Server::Impl::do_accept() {
  acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<HttpConnection>(std::move(socket), *this)->run();
    do_accept();
  });
}

Server::Server(ServerConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  if (impl_->config.policies.empty()) throw Error("serve: at least one policy is required");
  if (impl_->config.layouts.empty()) throw Error("serve: at least one layout is required");
}

Server::~Server() { stop(); }

unsigned short Server::start() {
  Impl& s = *impl_;
  if (s.running) return s.acceptor.local_endpoint().port();
  if (!s.config.log_dir.empty()) std::filesystem::create_directories(s.config.log_dir);
  const tcp::endpoint ep(net::ip::make_address(s.config.address), s.config.port);
  s.acceptor.open(ep.protocol());
  s.acceptor.set_option(net::socket_base::reuse_address(true));
  s.acceptor.bind(ep);
  s.acceptor.listen(net::socket_base::max_listen_connections);
  s.do_accept();
  s.running = true;
  for (int i = 0; i < std::max(1, s.config.threads); ++i) s.workers.emplace_back([&s] { s.ioc.run(); });
  return s.acceptor.local_endpoint().port();
}

void Server::stop() {
  Impl& s = *impl_;
  if (!s.running) return;
  s.running = false;
  s.ioc.stop();
  for (auto& t : s.workers) t.join();
  s.workers.clear();
  beast::error_code ec;
  s.acceptor.close(ec);
}

RestReply Server::handle_rest(std::string_view method, std::string_view target, std::string_view body) {
  return impl_->handle_rest(method, target, body);
}

std::shared_ptr<PlaySession> Server::find_session(std::string_view id) const { return impl_->find(id); }

}  // namespace zsc::service
