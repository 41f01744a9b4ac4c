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
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zsc/common/rng.hpp"
#include "zsc/kitchen/game.hpp"
#include "zsc/nn/network.hpp"

namespace zsc::service {

using nlohmann::json;

enum class SessionMode { Realtime, Stepped };
std::string_view mode_name(SessionMode m);
SessionMode parse_mode(std::string_view s);

struct SessionConfig {
  std::string id;
  std::shared_ptr<const kitchen::Layout> layout;
  std::string policy_id;
  std::shared_ptr<const nn::PolicyNetwork> policy;
  int human_seat = 0;
  SessionMode mode = SessionMode::Realtime;
  int tick_ms = 200;
  bool greedy = false;  // agent takes the argmax action instead of sampling
  kitchen::KitchenConfig kitchen;
  std::uint64_t seed = 0;
  std::string log_path;  // append-only JSONL; empty disables logging
};

// One human seat and one agent seat on a single kitchen. The state only
// moves through tick() (realtime) or an action message (stepped). All
// members lock, so the session can be driven from any thread.
class PlaySession {
 public:
  explicit PlaySession(SessionConfig config);

  const SessionConfig& config() const { return config_; }

  // Current state as a wire frame.
  json state_frame() const;

  // Handles one client frame and returns the frames to send back: a state
  // frame when the game advanced, an ack, or an error frame. Malformed input
  // never changes the session.
  std::vector<json> handle_message(std::string_view text);

  // Realtime clock: advances one step with the pending human action (STAY
  // when none arrived). Returns nullopt once the episode is over.
  std::optional<json> tick();

  bool done() const;
  int t() const;
  double reward_total() const;
  // Joint actions applied so far, in order.
  std::vector<kitchen::JointAction> history() const;

 private:
  json step_locked(kitchen::Action human, bool human_missing);
  json frame_locked() const;
  void log_locked(const json& record);

  SessionConfig config_;
  kitchen::Kitchen kitchen_;
  mutable std::mutex mu_;
  kitchen::GameState state_;
  Rng rng_;
  std::optional<kitchen::Action> pending_;
  double reward_step_ = 0.0;
  double reward_total_ = 0.0;
  bool done_ = false;
  bool survey_done_ = false;
  std::vector<kitchen::JointAction> history_;
  std::ofstream log_;
};

json error_frame(std::string_view message);

}  // namespace zsc::service
