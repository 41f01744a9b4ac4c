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
#include <string>
#include <vector>

#include "zsc/kitchen/game.hpp"

namespace zsc::kitchen {

struct ActionDistribution {
  std::array<double, kNumActions> probs{};
  double value = 0.0;  // the agent's value estimate; 0 for scripted agents
};

// A (possibly stochastic) policy for one seat. act() must be const and safe
// to call concurrently; any randomness is drawn by the caller from the
// returned distribution.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual ActionDistribution act(const Kitchen& kitchen, const GameState& state, int seat) const = 0;
  virtual std::string name() const = 0;
};

// Per-seat record of one episode. Parallel arrays; `observations` holds
// size() * obs_size values, or nothing when observations were not recorded.
struct Trajectory {
  int obs_size = 0;
  std::vector<double> observations;
  std::vector<int> actions;
  std::vector<double> log_probs;
  std::vector<double> values;
  std::vector<double> rewards;
  std::vector<std::uint8_t> dones;
  double bootstrap_value = 0.0;  // value of the state after the last step

  std::size_t size() const { return actions.size(); }
  double total_reward() const;
  // Empty when the arrays are consistent and rewards finite.
  std::string check() const;
};

struct RolloutOptions {
  std::array<bool, 2> record_observations = {true, true};
};

struct Episode {
  std::array<Trajectory, 2> seats;
  std::vector<JointAction> actions;
  Events events;
  double total_reward = 0.0;

  // Hash over the joint actions and per-step rewards.
  std::string hash() const;
};

// Runs one episode to the kitchen's horizon, sampling both seats' actions
// from a stream seeded by `seed`. Throws zsc::Error if an agent returns an
// invalid distribution.
Episode rollout(const Kitchen& kitchen, const Agent& seat0, const Agent& seat1, std::uint64_t seed,
                const RolloutOptions& options = {});

// Agents that need no learned parameters.
class StayAgent final : public Agent {
 public:
  ActionDistribution act(const Kitchen&, const GameState&, int) const override;
  std::string name() const override { return "stay"; }
};

class UniformRandomAgent final : public Agent {
 public:
  ActionDistribution act(const Kitchen&, const GameState&, int) const override;
  std::string name() const override { return "random"; }
};

// Plays a fixed action list open-loop, then Stay.
class ScriptAgent final : public Agent {
 public:
  explicit ScriptAgent(std::vector<Action> script) : script_(std::move(script)) {}
  ActionDistribution act(const Kitchen&, const GameState& state, int) const override;
  std::string name() const override { return "script"; }

 private:
  std::vector<Action> script_;
};

}  // namespace zsc::kitchen
