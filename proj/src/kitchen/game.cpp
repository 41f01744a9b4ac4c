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

#include "zsc/kitchen/game.hpp"

#include <string>
#include <utility>

#include "zsc/common/error.hpp"

namespace zsc::kitchen {

std::string_view action_name(Action a) {
  switch (a) {
    case Action::Up: return "UP";
    case Action::Down: return "DOWN";
    case Action::Left: return "LEFT";
    case Action::Right: return "RIGHT";
    case Action::Stay: return "STAY";
    case Action::Interact: return "INTERACT";
  }
  return "?";
}

Action parse_action(std::string_view name) {
  for (int i = 0; i < kNumActions; ++i) {
    const auto a = static_cast<Action>(i);
    if (action_name(a) == name) return a;
  }
  throw Error("unknown action '" + std::string(name) + "'");
}

Action action_from_index(int index) {
  if (index < 0 || index >= kNumActions) {
    throw Error("action index " + std::to_string(index) + " outside 0.." + std::to_string(kNumActions - 1));
  }
  return static_cast<Action>(index);
}

std::string_view held_name(Held h) {
  switch (h) {
    case Held::Nothing: return "nothing";
    case Held::Onion: return "onion";
    case Held::Dish: return "dish";
    case Held::Soup: return "soup";
  }
  return "?";
}

Kitchen::Kitchen(std::shared_ptr<const Layout> layout, KitchenConfig config)
    : layout_(std::move(layout)), config_(config) {
  if (!layout_) throw Error("kitchen: null layout");
  if (config_.horizon < 1) throw Error("kitchen: horizon must be >= 1");
  if (config_.cook_time < 1) throw Error("kitchen: cook_time must be >= 1");
}

GameState Kitchen::reset() const {
  GameState s;
  s.layout_id = layout_->id();
  for (int i = 0; i < 2; ++i) {
    s.players[static_cast<std::size_t>(i)] =
        PlayerState{layout_->starts()[static_cast<std::size_t>(i)], Direction::Down, Held::Nothing};
  }
  s.pots.reserve(layout_->pots().size());
  for (const Pos& p : layout_->pots()) s.pots.push_back(PotState{p, 0, 0, false});
  s.t = 0;
  return s;
}

namespace {

bool is_move(Action a) { return static_cast<int>(a) < 4; }

PotState* find_pot(GameState& s, Pos p) {
  for (auto& pot : s.pots) {
    if (pot.pos == p) return &pot;
  }
  return nullptr;
}

}  // namespace

StepResult Kitchen::step(const GameState& state, JointAction actions) const {
  if (state.layout_id != layout_->id()) throw Error("step: state belongs to layout " + state.layout_id);
  if (is_terminal(state)) {
    throw Error("step: state is terminal (t=" + std::to_string(state.t) + ", horizon=" +
                std::to_string(config_.horizon) + ")");
  }
  for (Action a : actions) {
    if (static_cast<int>(a) >= kNumActions) throw Error("step: invalid action code");
  }

  StepResult result;
  GameState& next = result.state;
  next = state;

  // Movement. Facing always follows a move action; translation happens only
  // into Floor cells and is subject to the conflict rules below.
  std::array<Pos, 2> current = {state.players[0].pos, state.players[1].pos};
  std::array<Pos, 2> target = current;
  for (std::size_t i = 0; i < 2; ++i) {
    const Action a = actions[i];
    if (!is_move(a)) continue;
    const auto dir = static_cast<Direction>(a);
    next.players[i].facing = dir;
    const Pos dest = step_toward(current[i], dir);
    if (layout_->is_floor(dest)) target[i] = dest;
  }
  // Same destination (which includes walking into a partner who stays put)
  // or a position swap freezes both players.
  const bool same_target = target[0] == target[1];
  const bool swap = target[0] == current[1] && target[1] == current[0];
  if (same_target || swap) target = current;
  next.players[0].pos = target[0];
  next.players[1].pos = target[1];

  // Interactions, resolved in player-index order.
  Events& ev = result.events;
  for (std::size_t i = 0; i < 2; ++i) {
    if (actions[i] != Action::Interact) continue;
    PlayerState& p = next.players[i];
    const Pos facing_cell = step_toward(p.pos, p.facing);
    switch (layout_->at(facing_cell)) {
      case Tile::OnionDispenser:
        if (p.held == Held::Nothing) {
          p.held = Held::Onion;
          ++ev.onion_pickups;
        }
        break;
      case Tile::DishDispenser:
        if (p.held == Held::Nothing) {
          p.held = Held::Dish;
          ++ev.dish_pickups;
        }
        break;
      case Tile::Pot: {
        PotState* pot = find_pot(next, facing_cell);
        if (p.held == Held::Onion && pot->onions < 3) {
          ++pot->onions;
          p.held = Held::Nothing;
          ++ev.pot_fills;
        } else if (p.held == Held::Dish && pot->ready) {
          *pot = PotState{pot->pos, 0, 0, false};
          p.held = Held::Soup;
          ++ev.soup_pickups;
        }
        break;
      }
      case Tile::Serving:
        if (p.held == Held::Soup) {
          p.held = Held::Nothing;
          ++ev.deliveries;
        }
        break;
      case Tile::Floor:
      case Tile::Wall:
        break;
    }
  }

  // Cooking: a full pot advances one tick per step, including the step in
  // which its third onion arrived.
  for (auto& pot : next.pots) {
    if (pot.onions == 3 && !pot.ready) {
      ++pot.timer;
      if (pot.timer >= config_.cook_time) {
        pot.timer = config_.cook_time;
        pot.ready = true;
      }
    }
  }

  next.t = state.t + 1;
  result.reward = ev.reward(config_.rewards);
  result.done = next.t == config_.horizon;
  return result;
}

std::string Kitchen::validate(const GameState& s) const {
  if (s.layout_id != layout_->id()) return "layout id mismatch";
  for (std::size_t i = 0; i < 2; ++i) {
    if (!layout_->is_floor(s.players[i].pos)) return "player " + std::to_string(i) + " off Floor";
  }
  if (s.players[0].pos == s.players[1].pos) return "players overlap";
  if (s.pots.size() != layout_->pots().size()) return "pot count mismatch";
  for (std::size_t k = 0; k < s.pots.size(); ++k) {
    const PotState& pot = s.pots[k];
    if (pot.pos != layout_->pots()[k]) return "pot position mismatch";
    if (pot.onions < 0 || pot.onions > 3) return "pot onion count out of range";
    if (pot.timer < 0 || pot.timer > config_.cook_time) return "pot timer out of range";
    if (pot.timer > 0 && pot.onions != 3) return "pot cooking without three onions";
    if (pot.ready != (pot.onions == 3 && pot.timer == config_.cook_time)) return "pot ready flag inconsistent";
  }
  if (s.t < 0 || s.t > config_.horizon) return "timestep out of range";
  return {};
}

}  // namespace zsc::kitchen
