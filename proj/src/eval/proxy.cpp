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

#include "zsc/eval/proxy.hpp"

#include <algorithm>
#include <deque>
#include <vector>

#include "zsc/common/error.hpp"

namespace zsc::eval {

using kitchen::Action;
using kitchen::Direction;
using kitchen::GameState;
using kitchen::Held;
using kitchen::Kitchen;
using kitchen::Layout;
using kitchen::Pos;
using kitchen::Tile;

ProxyAgent::ProxyAgent(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw Error("proxy: epsilon must be in [0,1]");
}

kitchen::ActionDistribution ProxyAgent::act(const Kitchen& kitchen, const GameState& state, int seat) const {
  kitchen::ActionDistribution d;
  d.probs.fill(epsilon_ / kitchen::kNumActions);
  d.probs[static_cast<std::size_t>(plan(kitchen, state, seat))] += 1.0 - epsilon_;
  return d;
}

namespace {

Action move_action(Direction d) { return static_cast<Action>(d); }

// First move of a shortest Floor path from `from` to any cell flagged in
// `goal`. Cells flagged in `blocked` are impassable. Neighbour order is
// fixed, so ties resolve deterministically.
std::optional<Direction> first_step(const Layout& layout, Pos from, const std::vector<bool>& goal,
                                    const std::vector<bool>& blocked) {
  const auto n = static_cast<std::size_t>(layout.cell_count());
  std::vector<int> first(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<Pos> queue;
  seen[static_cast<std::size_t>(layout.index(from))] = true;
  queue.push_back(from);
  while (!queue.empty()) {
    const Pos p = queue.front();
    queue.pop_front();
    const auto pi = static_cast<std::size_t>(layout.index(p));
    if (p != from && goal[pi]) return static_cast<Direction>(first[pi]);
    for (Direction d : kitchen::kDirections) {
      const Pos q = kitchen::step_toward(p, d);
      if (!layout.is_floor(q)) continue;
      const auto qi = static_cast<std::size_t>(layout.index(q));
      if (seen[qi] || blocked[qi]) continue;
      seen[qi] = true;
      first[qi] = p == from ? static_cast<int>(d) : first[pi];
      queue.push_back(q);
    }
  }
  return std::nullopt;
}

}  // namespace

Action ProxyAgent::plan(const Kitchen& kitchen, const GameState& state, int seat) const {
  const Layout& layout = kitchen.layout();
  const auto& me = state.players[static_cast<std::size_t>(seat)];
  const auto& other = state.players[static_cast<std::size_t>(1 - seat)];

  int full_pots = 0;
  bool pot_needs_onion = false;
  bool pot_ready = false;
  for (const auto& pot : state.pots) {
    if (pot.onions == 3) ++full_pots;
    if (pot.onions < 3) pot_needs_onion = true;
    if (pot.ready) pot_ready = true;
  }

  // Which cells are worth interacting with given what we hold.
  std::vector<bool> target(static_cast<std::size_t>(layout.cell_count()), false);
  auto mark_tiles = [&](Tile kind) {
    for (int i = 0; i < layout.cell_count(); ++i) {
      if (layout.at(layout.pos(i)) == kind) target[static_cast<std::size_t>(i)] = true;
    }
  };
  auto mark_pots = [&](auto pred) {
    for (const auto& pot : state.pots) {
      if (pred(pot)) target[static_cast<std::size_t>(layout.index(pot.pos))] = true;
    }
  };
  bool wait_only = false;  // adjacent to target but interaction not yet useful
  switch (me.held) {
    case Held::Nothing: {
      const int dishes_elsewhere = other.held == Held::Dish ? 1 : 0;
      if (full_pots > dishes_elsewhere) {
        mark_tiles(Tile::DishDispenser);
      } else if (pot_needs_onion) {
        mark_tiles(Tile::OnionDispenser);
      } else {
        mark_tiles(Tile::DishDispenser);
      }
      break;
    }
    case Held::Onion:
      mark_pots([](const kitchen::PotState& p) { return p.onions < 3; });
      break;
    case Held::Dish:
      if (pot_ready) {
        mark_pots([](const kitchen::PotState& p) { return p.ready; });
      } else {
        mark_pots([](const kitchen::PotState& p) { return p.onions == 3; });
        wait_only = true;
        if (full_pots == 0) {
          mark_pots([](const kitchen::PotState& p) { return p.onions > 0; });
          if (std::none_of(target.begin(), target.end(), [](bool b) { return b; })) {
            mark_pots([](const kitchen::PotState&) { return true; });
          }
        }
      }
      break;
    case Held::Soup:
      mark_tiles(Tile::Serving);
      break;
  }

  // Adjacent to a target: face it and interact (or wait).
  for (Direction d : kitchen::kDirections) {
    const Pos q = kitchen::step_toward(me.pos, d);
    if (!layout.in_bounds(q) || !target[static_cast<std::size_t>(layout.index(q))]) continue;
    if (me.facing != d) return move_action(d);
    return wait_only ? Action::Stay : Action::Interact;
  }

  // Otherwise walk toward the nearest Floor cell next to a target.
  std::vector<bool> goal(target.size(), false);
  for (int i = 0; i < layout.cell_count(); ++i) {
    if (!target[static_cast<std::size_t>(i)]) continue;
    const Pos t = layout.pos(i);
    for (Direction d : kitchen::kDirections) {
      const Pos q = kitchen::step_toward(t, d);
      if (layout.is_floor(q)) goal[static_cast<std::size_t>(layout.index(q))] = true;
    }
  }
  std::vector<bool> blocked(target.size(), false);
  blocked[static_cast<std::size_t>(layout.index(other.pos))] = true;
  if (auto d = first_step(layout, me.pos, goal, blocked)) return move_action(*d);
  std::fill(blocked.begin(), blocked.end(), false);
  if (auto d = first_step(layout, me.pos, goal, blocked)) return move_action(*d);
  return Action::Stay;
}

}  // namespace zsc::eval
