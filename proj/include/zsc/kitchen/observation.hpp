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

#include <cstddef>
#include <span>
#include <vector>

#include "zsc/kitchen/game.hpp"

namespace zsc::kitchen {

// Channel roles of the ego-centric grid encoding.
enum Channel : int {
  kWallChannel = 0,
  kOnionDispenserChannel = 1,
  kDishDispenserChannel = 2,
  kPotChannel = 3,         // (1 + onions) / 4 at each pot cell
  kServingChannel = 4,
  kSelfChannel = 5,        // (1 + facing) / 4 at the observer's cell
  kPartnerChannel = 6,     // same code for the partner
  kSelfHeldChannel = 7,    // held code / 3 at the observer's cell
  kPartnerHeldChannel = 8,
  kPotProgressChannel = 9, // cook timer / cook time at each pot cell
  kNumChannels = 10,
};

// Dense height x width x channels tensor, channel fastest.
struct Observation {
  int height = 0;
  int width = 0;
  int channels = kNumChannels;
  std::vector<double> data;

  std::size_t size() const { return data.size(); }
  double at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  friend bool operator==(const Observation&, const Observation&) = default;
};

Observation encode(const Kitchen& kitchen, const GameState& state, int player_index);

// Writes the encoding into `out` (size height*width*kNumChannels).
void encode_into(const Kitchen& kitchen, const GameState& state, int player_index,
                 std::span<double> out);

}  // namespace zsc::kitchen
