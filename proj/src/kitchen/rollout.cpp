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

#include "zsc/kitchen/rollout.hpp"

#include <cmath>
#include <numeric>

#include "zsc/common/error.hpp"
#include "zsc/common/hash.hpp"
#include "zsc/common/rng.hpp"
#include "zsc/kitchen/observation.hpp"

namespace zsc::kitchen {

double Trajectory::total_reward() const {
  return std::accumulate(rewards.begin(), rewards.end(), 0.0);
}

std::string Trajectory::check() const {
  const std::size_t n = actions.size();
  if (log_probs.size() != n || values.size() != n || rewards.size() != n || dones.size() != n) {
    return "trajectory arrays have unequal lengths";
  }
  if (!observations.empty() && observations.size() != n * static_cast<std::size_t>(obs_size)) {
    return "trajectory observations do not match obs_size";
  }
  for (double r : rewards) {
    if (!std::isfinite(r)) return "trajectory contains a non-finite reward";
  }
  return {};
}

std::string Episode::hash() const {
  Fnv1a h;
  for (const auto& ja : actions) {
    h.update_u64(static_cast<std::uint64_t>(ja[0]));
    h.update_u64(static_cast<std::uint64_t>(ja[1]));
  }
  for (double r : seats[0].rewards) h.update_double(r);
  return h.hex();
}

namespace {

void require_valid(const ActionDistribution& d, const Agent& agent) {
  double total = 0.0;
  for (double p : d.probs) {
    if (!std::isfinite(p) || p < 0.0) throw Error("agent '" + agent.name() + "' produced an invalid probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error("agent '" + agent.name() + "' produced a distribution over " + std::to_string(kNumActions) +
                " actions summing to " + std::to_string(total));
  }
  if (!std::isfinite(d.value)) throw Error("agent '" + agent.name() + "' produced a non-finite value");
}

}  // namespace

Episode rollout(const Kitchen& kitchen, const Agent& seat0, const Agent& seat1, std::uint64_t seed,
                const RolloutOptions& options) {
  const int horizon = kitchen.config().horizon;
  const int obs_size = kitchen.layout().cell_count() * kNumChannels;
  const std::array<const Agent*, 2> agents = {&seat0, &seat1};

  Episode ep;
  ep.actions.reserve(static_cast<std::size_t>(horizon));
  for (std::size_t s = 0; s < 2; ++s) {
    Trajectory& tr = ep.seats[s];
    tr.obs_size = obs_size;
    if (options.record_observations[s]) tr.observations.reserve(static_cast<std::size_t>(horizon * obs_size));
  }

  Rng rng(seed);
  GameState state = kitchen.reset();
  std::vector<double> obs(static_cast<std::size_t>(obs_size));
  bool done = false;
  while (!done) {
    JointAction joint{};
    std::array<double, 2> log_probs{};
    std::array<double, 2> values{};
    for (std::size_t s = 0; s < 2; ++s) {
      const ActionDistribution d = agents[s]->act(kitchen, state, static_cast<int>(s));
      require_valid(d, *agents[s]);
      const std::size_t a = sample_categorical(rng, d.probs);
      joint[s] = static_cast<Action>(a);
      log_probs[s] = std::log(d.probs[a]);
      values[s] = d.value;
      if (options.record_observations[s]) {
        encode_into(kitchen, state, static_cast<int>(s), obs);
        ep.seats[s].observations.insert(ep.seats[s].observations.end(), obs.begin(), obs.end());
      }
    }
    StepResult r = kitchen.step(state, joint);
    done = r.done;
    for (std::size_t s = 0; s < 2; ++s) {
      Trajectory& tr = ep.seats[s];
      tr.actions.push_back(static_cast<int>(joint[s]));
      tr.log_probs.push_back(log_probs[s]);
      tr.values.push_back(values[s]);
      tr.rewards.push_back(r.reward);
      tr.dones.push_back(done ? 1 : 0);
    }
    ep.actions.push_back(joint);
    ep.events += r.events;
    ep.total_reward += r.reward;
    state = std::move(r.state);
  }
  // Episodes end at the horizon, which is treated as terminal.
  ep.seats[0].bootstrap_value = 0.0;
  ep.seats[1].bootstrap_value = 0.0;
  return ep;
}

ActionDistribution StayAgent::act(const Kitchen&, const GameState&, int) const {
  ActionDistribution d;
  d.probs[static_cast<std::size_t>(Action::Stay)] = 1.0;
  return d;
}

ActionDistribution UniformRandomAgent::act(const Kitchen&, const GameState&, int) const {
  ActionDistribution d;
  d.probs.fill(1.0 / kNumActions);
  return d;
}

ActionDistribution ScriptAgent::act(const Kitchen&, const GameState& state, int) const {
  ActionDistribution d;
  const auto t = static_cast<std::size_t>(state.t);
  const Action a = t < script_.size() ? script_[t] : Action::Stay;
  d.probs[static_cast<std::size_t>(a)] = 1.0;
  return d;
}

}  // namespace zsc::kitchen
