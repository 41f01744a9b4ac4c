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

#include "zsc/kitchen/observation.hpp"

#include <algorithm>

#include "zsc/common/error.hpp"

namespace zsc::kitchen {

namespace {

double held_code(Held h) { return static_cast<double>(h) / 3.0; }
double facing_code(Direction d) { return (static_cast<double>(d) + 1.0) / 4.0; }

}  // namespace

void encode_into(const Kitchen& kitchen, const GameState& state, int player_index,
                 std::span<double> out) {
  if (player_index != 0 && player_index != 1) {
    throw Error("encode: player index must be 0 or 1, got " + std::to_string(player_index));
  }
  const Layout& layout = kitchen.layout();
  const int w = layout.width();
  const int c = kNumChannels;
  if (out.size() != static_cast<std::size_t>(layout.cell_count() * c)) {
    throw Error("encode: output buffer has wrong size");
  }
  std::fill(out.begin(), out.end(), 0.0);
  auto cell = [&](Pos p, int channel) -> double& {
    return out[static_cast<std::size_t>((p.y * w + p.x) * c + channel)];
  };

  for (int i = 0; i < layout.cell_count(); ++i) {
    const Pos p = layout.pos(i);
    switch (layout.at(p)) {
      case Tile::Wall: cell(p, kWallChannel) = 1.0; break;
      case Tile::OnionDispenser: cell(p, kOnionDispenserChannel) = 1.0; break;
      case Tile::DishDispenser: cell(p, kDishDispenserChannel) = 1.0; break;
      case Tile::Serving: cell(p, kServingChannel) = 1.0; break;
      case Tile::Pot:
      case Tile::Floor: break;
    }
  }
  const double cook_time = kitchen.config().cook_time;
  for (const PotState& pot : state.pots) {
    cell(pot.pos, kPotChannel) = (1.0 + pot.onions) / 4.0;
    cell(pot.pos, kPotProgressChannel) = pot.timer / cook_time;
  }

  const PlayerState& self = state.players[static_cast<std::size_t>(player_index)];
  const PlayerState& partner = state.players[static_cast<std::size_t>(1 - player_index)];
  cell(self.pos, kSelfChannel) = facing_code(self.facing);
  cell(self.pos, kSelfHeldChannel) = held_code(self.held);
  cell(partner.pos, kPartnerChannel) = facing_code(partner.facing);
  cell(partner.pos, kPartnerHeldChannel) = held_code(partner.held);
}

Observation encode(const Kitchen& kitchen, const GameState& state, int player_index) {
  Observation obs;
  obs.height = kitchen.layout().height();
  obs.width = kitchen.layout().width();
  obs.channels = kNumChannels;
  obs.data.resize(static_cast<std::size_t>(obs.height * obs.width * obs.channels));
  encode_into(kitchen, state, player_index, obs.data);
  return obs;
}

}  // namespace zsc::kitchen
