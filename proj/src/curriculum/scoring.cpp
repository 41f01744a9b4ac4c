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

#include "zsc/curriculum/scoring.hpp"

#include <algorithm>

#include "zsc/common/error.hpp"
#include "zsc/ppo/gae.hpp"

namespace zsc::curriculum {

double score_episode(const kitchen::Trajectory& trajectory) {
  if (trajectory.size() == 0) throw Error("score_episode: empty trajectory");
  return trajectory.total_reward() / static_cast<double>(trajectory.size());
}

double positive_value_loss_score(std::span<const double> advantages) {
  if (advantages.empty()) throw Error("positive_value_loss_score: no advantages");
  double total = 0.0;
  for (double a : advantages) total += std::max(a, 0.0);
  return total / static_cast<double>(advantages.size());
}

double positive_value_loss_score(const kitchen::Trajectory& trajectory, double gamma, double lambda) {
  if (trajectory.size() == 0) throw Error("positive_value_loss_score: empty trajectory");
  if (trajectory.values.size() != trajectory.size()) {
    throw Error("positive_value_loss_score: trajectory has no value estimates");
  }
  const auto g = ppo::gae(trajectory.rewards, trajectory.values, trajectory.bootstrap_value, gamma, lambda);
  return positive_value_loss_score(g.advantages);
}

}  // namespace zsc::curriculum
