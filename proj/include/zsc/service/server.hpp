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

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "zsc/kitchen/game.hpp"
#include "zsc/nn/network.hpp"
#include "zsc/service/layout_io.hpp"
#include "zsc/service/session.hpp"

namespace zsc::service {

struct PolicyEntry {
  std::string id;
  std::shared_ptr<const nn::PolicyNetwork> net;
  int iteration = 0;
  std::string fingerprint;
};

struct ServerConfig {
  std::vector<PolicyEntry> policies;
  LayoutList layouts;
  kitchen::KitchenConfig kitchen;
  std::string log_dir = "sessions";
  bool greedy = false;
  std::string address = "127.0.0.1";
  unsigned short port = 0;  // 0 picks a free port
  int threads = 2;
  int default_tick_ms = 200;
  std::uint64_t seed = 0;
};

struct RestReply {
  int status = 200;
  nlohmann::json body;
};

// HTTP + WebSocket front end. REST routes live under /api; the play socket
// is /api/sessions/{id}/play. One socket may attach to a session at a time.
class Server {
 public:
  explicit Server(ServerConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts the worker threads; returns the bound port.
  unsigned short start();
  // Stops the workers and closes every connection. Idempotent.
  void stop();

  // REST routing without sockets.
  RestReply handle_rest(std::string_view method, std::string_view target, std::string_view body);

  std::shared_ptr<PlaySession> find_session(std::string_view id) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace zsc::service
