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

#include "zsc/service/session.hpp"

#include <array>
#include <cmath>

#include "zsc/common/error.hpp"
#include "zsc/kitchen/observation.hpp"
#include "zsc/ppo/ppo.hpp"

namespace zsc::service {

namespace {

std::string_view facing_name(kitchen::Direction d) {
  switch (d) {
    case kitchen::Direction::Up: return "UP";
    case kitchen::Direction::Down: return "DOWN";
    case kitchen::Direction::Left: return "LEFT";
    case kitchen::Direction::Right: return "RIGHT";
  }
  return "DOWN";
}

}  // namespace

std::string_view mode_name(SessionMode m) { return m == SessionMode::Realtime ? "realtime" : "stepped"; }

SessionMode parse_mode(std::string_view s) {
  if (s == "realtime") return SessionMode::Realtime;
  if (s == "stepped") return SessionMode::Stepped;
  throw Error("unknown session mode '" + std::string(s) + "'");
}

json error_frame(std::string_view message) { return {{"type", "error"}, {"message", std::string(message)}}; }

PlaySession::PlaySession(SessionConfig config)
    : config_(std::move(config)),
      kitchen_((config_.layout ? config_.layout : throw Error("session: no layout")), config_.kitchen),
      state_(kitchen_.reset()),
      rng_(config_.seed) {
  if (!config_.policy) throw Error("session: no policy");
  if (config_.human_seat != 0 && config_.human_seat != 1) throw Error("session: seat must be 0 or 1");
  if (config_.tick_ms < 1) throw Error("session: tick_ms must be >= 1");
  if (!config_.log_path.empty()) {
    log_.open(config_.log_path, std::ios::app);
    if (!log_) throw Error("session: cannot open log '" + config_.log_path + "'");
  }
  std::lock_guard lock(mu_);
  log_locked({{"type", "session"},
              {"session_id", config_.id},
              {"layout_id", config_.layout->id()},
              {"policy_id", config_.policy_id},
              {"human_seat", config_.human_seat},
              {"mode", std::string(mode_name(config_.mode))},
              {"tick_ms", config_.tick_ms},
              {"horizon", config_.kitchen.horizon},
              {"cook_time", config_.kitchen.cook_time},
              {"seed", config_.seed}});
}

void PlaySession::log_locked(const json& record) {
  if (!log_.is_open()) return;
  log_ << record.dump() << '\n';
  log_.flush();
}

json PlaySession::frame_locked() const {
  const auto& layout = kitchen_.layout();
  json grid = json::array();
  for (int y = 0; y < layout.height(); ++y) {
    json row = json::array();
    for (int x = 0; x < layout.width(); ++x) row.push_back(static_cast<int>(layout.at({x, y})));
    grid.push_back(row);
  }
  json players = json::array();
  for (const auto& p : state_.players) {
    players.push_back({{"pos", {p.pos.x, p.pos.y}},
                       {"facing", std::string(facing_name(p.facing))},
                       {"held", std::string(kitchen::held_name(p.held))}});
  }
  json pots = json::array();
  for (const auto& p : state_.pots) {
    pots.push_back({{"pos", {p.pos.x, p.pos.y}}, {"onions", p.onions}, {"timer", p.timer}, {"ready", p.ready}});
  }
  return {{"type", "state"},   {"t", state_.t},          {"grid", grid},
          {"players", players}, {"pots", pots},          {"reward_step", reward_step_},
          {"reward_total", reward_total_}, {"done", done_}, {"human_seat", config_.human_seat}};
}

json PlaySession::state_frame() const {
  std::lock_guard lock(mu_);
  return frame_locked();
}

json PlaySession::step_locked(kitchen::Action human, bool human_missing) {
  const int agent_seat = 1 - config_.human_seat;
  const std::vector<double> obs = kitchen::encode(kitchen_, state_, agent_seat).data;
  const auto out = config_.policy->forward(obs, 1);
  std::array<double, kitchen::kNumActions> probs{};
  ppo::softmax(out.logits, probs);
  int agent_index = 0;
  if (config_.greedy) {
    for (int a = 1; a < kitchen::kNumActions; ++a) {
      if (probs[static_cast<std::size_t>(a)] > probs[static_cast<std::size_t>(agent_index)]) agent_index = a;
    }
  } else {
    agent_index = static_cast<int>(sample_categorical(rng_, probs));
  }
  kitchen::JointAction joint;
  joint[static_cast<std::size_t>(config_.human_seat)] = human;
  joint[static_cast<std::size_t>(agent_seat)] = kitchen::action_from_index(agent_index);

  const kitchen::StepResult r = kitchen_.step(state_, joint);
  state_ = r.state;
  reward_step_ = r.reward;
  reward_total_ += r.reward;
  done_ = r.done;
  history_.push_back(joint);
  log_locked({{"type", "step"},
              {"t", state_.t},
              {"actions", {std::string(kitchen::action_name(joint[0])), std::string(kitchen::action_name(joint[1]))}},
              {"human_missing", human_missing},
              {"reward", r.reward},
              {"reward_total", reward_total_},
              {"done", done_}});
  return frame_locked();
}

std::vector<json> PlaySession::handle_message(std::string_view text) {
  json msg;
  try {
    msg = json::parse(text);
  } catch (const json::exception&) {
    return {error_frame("malformed JSON")};
  }
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    return {error_frame("message needs a string 'type'")};
  }
  const std::string type = msg["type"].get<std::string>();
  std::lock_guard lock(mu_);
  if (type == "action") {
    if (!msg.contains("action") || !msg["action"].is_string()) return {error_frame("action message needs 'action'")};
    kitchen::Action a;
    try {
      a = kitchen::parse_action(msg["action"].get<std::string>());
    } catch (const std::exception&) {
      return {error_frame("unknown action '" + msg["action"].get<std::string>() + "'")};
    }
    if (done_) return {error_frame("episode is over")};
    if (config_.mode == SessionMode::Stepped) return {step_locked(a, false)};
    pending_ = a;
    return {};
  }
  if (type == "survey") {
    const auto rank = [&](const char* key) -> std::optional<int> {
      if (!msg.contains(key) || !msg[key].is_number_integer()) return std::nullopt;
      return msg[key].get<int>();
    };
    const auto collab = rank("collaborative_rank");
    const auto pref = rank("preference_rank");
    if (!collab || !pref) return {error_frame("survey needs integer collaborative_rank and preference_rank")};
    if (!done_) return {error_frame("survey is accepted after the episode ends")};
    if (survey_done_) return {error_frame("survey already submitted")};
    json record = {{"type", "survey"},
                   {"session_id", config_.id},
                   {"collaborative_rank", *collab},
                   {"preference_rank", *pref}};
    if (msg.contains("comment") && msg["comment"].is_string()) record["comment"] = msg["comment"];
    log_locked(record);
    survey_done_ = true;
    return {{{"type", "survey_ack"}}};
  }
  return {error_frame("unknown message type '" + type + "'")};
}

std::optional<json> PlaySession::tick() {
  std::lock_guard lock(mu_);
  if (done_) return std::nullopt;
  const bool missing = !pending_.has_value();
  const kitchen::Action a = pending_.value_or(kitchen::Action::Stay);
  pending_.reset();
  return step_locked(a, missing);
}

bool PlaySession::done() const {
  std::lock_guard lock(mu_);
  return done_;
}

int PlaySession::t() const {
  std::lock_guard lock(mu_);
  return state_.t;
}

double PlaySession::reward_total() const {
  std::lock_guard lock(mu_);
  return reward_total_;
}

std::vector<kitchen::JointAction> PlaySession::history() const {
  std::lock_guard lock(mu_);
  return history_;
}

}  // namespace zsc::service
