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

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "zsc/kitchen/layout.hpp"

namespace zsc::kitchen {

enum class Action : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3, Stay = 4, Interact = 5 };
inline constexpr int kNumActions = 6;

using JointAction = std::array<Action, 2>;

std::string_view action_name(Action a);  // "UP", "DOWN", ..., "INTERACT"
// Accepts the upper-case wire names; throws zsc::Error otherwise.
Action parse_action(std::string_view name);
Action action_from_index(int index);

enum class Held : std::uint8_t { Nothing = 0, Onion = 1, Dish = 2, Soup = 3 };
std::string_view held_name(Held h);

struct PlayerState {
  Pos pos;
  Direction facing = Direction::Down;
  Held held = Held::Nothing;
  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct PotState {
  Pos pos;
  int onions = 0;
  int timer = 0;
  bool ready = false;
  friend bool operator==(const PotState&, const PotState&) = default;
};

struct GameState {
  std::string layout_id;
  std::array<PlayerState, 2> players;
  std::vector<PotState> pots;
  int t = 0;
  friend bool operator==(const GameState&, const GameState&) = default;
};

struct RewardScheme {
  double onion_pickup = 3.0;
  double pot_fill = 3.0;
  double soup_pickup = 5.0;
  double delivery = 20.0;
  double dish_pickup = 0.0;
};

struct KitchenConfig {
  int horizon = 400;
  int cook_time = 20;
  RewardScheme rewards;
};

// Per-step event tallies; team reward is a linear function of these.
struct Events {
  int onion_pickups = 0;
  int pot_fills = 0;
  int dish_pickups = 0;
  int soup_pickups = 0;
  int deliveries = 0;

  Events& operator+=(const Events& o) {
    onion_pickups += o.onion_pickups;
    pot_fills += o.pot_fills;
    dish_pickups += o.dish_pickups;
    soup_pickups += o.soup_pickups;
    deliveries += o.deliveries;
    return *this;
  }
  double reward(const RewardScheme& r) const {
    return r.onion_pickup * onion_pickups + r.pot_fill * pot_fills +
           r.dish_pickup * dish_pickups + r.soup_pickup * soup_pickups + r.delivery * deliveries;
  }
  friend bool operator==(const Events&, const Events&) = default;
};

struct StepResult {
  GameState state;
  double reward = 0.0;  // shared team reward
  bool done = false;
  Events events;
};

// Two-player common-payoff kitchen. Stateless apart from its immutable
// layout and configuration, so one instance may be shared across threads.
class Kitchen {
 public:
  explicit Kitchen(std::shared_ptr<const Layout> layout, KitchenConfig config = {});

  const Layout& layout() const { return *layout_; }
  const std::shared_ptr<const Layout>& layout_ptr() const { return layout_; }
  const KitchenConfig& config() const { return config_; }

  GameState reset() const;
  // Throws zsc::Error when `state` is terminal or belongs to another layout.
  StepResult step(const GameState& state, JointAction actions) const;

  bool is_terminal(const GameState& state) const { return state.t >= config_.horizon; }
  // Empty string when valid, otherwise the first violated invariant.
  std::string validate(const GameState& state) const;

 private:
  std::shared_ptr<const Layout> layout_;
  KitchenConfig config_;
};

}  // namespace zsc::kitchen
