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

#include <span>

#include "zsc/kitchen/rollout.hpp"

namespace zsc::curriculum {

// Mean per-timestep team reward: total reward / episode length.
// Throws zsc::Error on an empty trajectory.
double score_episode(const kitchen::Trajectory& trajectory);

// Mean over steps of max(advantage, 0). Throws on empty input.
double positive_value_loss_score(std::span<const double> advantages);

// Computes GAE advantages from the trajectory's value estimates first.
// Throws when the trajectory carries no value estimates.
double positive_value_loss_score(const kitchen::Trajectory& trajectory, double gamma, double lambda);

}  // namespace zsc::curriculum
