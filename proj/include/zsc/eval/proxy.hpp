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

#include <optional>
#include <string>

#include "zsc/kitchen/rollout.hpp"

namespace zsc::eval {

// Scripted stand-in for a human partner: a nearest-goal greedy planner
// (onion -> pot -> dish -> plate -> serve) that replans every step around
// the partner's current cell, mixed with epsilon-uniform action noise.
class ProxyAgent final : public kitchen::Agent {
 public:
  explicit ProxyAgent(double epsilon = 0.1);

  kitchen::ActionDistribution act(const kitchen::Kitchen& kitchen, const kitchen::GameState& state,
                                  int seat) const override;
  std::string name() const override { return "proxy"; }

  // Noise-free planned action.
  kitchen::Action plan(const kitchen::Kitchen& kitchen, const kitchen::GameState& state, int seat) const;
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

}  // namespace zsc::eval
