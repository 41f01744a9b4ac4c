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

// Shared fixture: a small kitchen and a scripted fetch-cook-serve pair whose
// reward ledger was worked out by hand, step by step, from the game rules.

#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "zsc/kitchen/game.hpp"

namespace zsc::testing {

// Pot above the seat-0 start; onions far left on the same row, dishes far
// left two rows down, serving far right.
inline constexpr std::string_view kFixtureLayout =
    "XXXPXXX\n"
    "O  1  S\n"
    "X     X\n"
    "D  2  X\n"
    "XXXXXXX\n";

inline constexpr int kFixtureHorizon = 60;

// Seat 0: six round trips (onion pickup, pot fill) then steps aside.
inline std::vector<kitchen::Action> fixture_cook_script() {
  using kitchen::Action;
  std::vector<Action> s;
  for (int trip = 0; trip < 3; ++trip) {
    for (Action a : {Action::Left, Action::Left, Action::Left, Action::Interact}) s.push_back(a);
    for (Action a : {Action::Right, Action::Right, Action::Up, Action::Interact}) s.push_back(a);
  }
  s.push_back(Action::Left);
  return s;  // Stay afterwards
}

// Seat 1: takes a dish, waits for the soup, plates it and serves.
inline std::vector<kitchen::Action> fixture_serve_script() {
  using kitchen::Action;
  std::vector<Action> s = {Action::Left, Action::Left, Action::Left, Action::Interact};
  while (s.size() < 39) s.push_back(Action::Stay);
  for (Action a : {Action::Right, Action::Right, Action::Up, Action::Up, Action::Interact, Action::Right,
                   Action::Right, Action::Right, Action::Interact}) {
    s.push_back(a);
  }
  return s;
}

// Hand-simulated ledger: step number (1-based) -> team reward.
//   4  seat 0 takes an onion (+3); seat 1 takes a dish (+0)
//   8, 16, 24  pot fills (+3 each); 12, 20  onion pickups (+3 each)
//   24 third onion starts cooking: timer 1 after step 24, 20 after step 43
//   44 seat 1 plates the ready soup (+5)
//   48 seat 1 delivers (+20)
inline const std::map<int, double>& fixture_ledger() {
  static const std::map<int, double> ledger = {{4, 3.0},  {8, 3.0},  {12, 3.0}, {16, 3.0},
                                               {20, 3.0}, {24, 3.0}, {44, 5.0}, {48, 20.0}};
  return ledger;
}

inline constexpr double kFixtureTotal = 43.0;

}  // namespace zsc::testing
