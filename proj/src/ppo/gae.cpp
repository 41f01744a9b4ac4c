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

#include "zsc/ppo/gae.hpp"

#include <string>

#include "zsc/common/error.hpp"

namespace zsc::ppo {

GaeResult gae(std::span<const double> rewards, std::span<const double> values, double bootstrap_value,
              double gamma, double lambda) {
  if (rewards.empty()) throw Error("gae: empty input");
  if (rewards.size() != values.size()) {
    throw Error("gae: " + std::to_string(rewards.size()) + " rewards but " + std::to_string(values.size()) + " values");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error("gae: gamma must be in (0,1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("gae: lambda must be in [0,1]");

  const std::size_t n = rewards.size();
  GaeResult out;
  out.advantages.resize(n);
  out.returns.resize(n);
  double running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double next_value = i + 1 < n ? values[i + 1] : bootstrap_value;
    const double delta = rewards[i] + gamma * next_value - values[i];
    running = delta + gamma * lambda * running;
    out.advantages[i] = running;
    out.returns[i] = running + values[i];
  }
  return out;
}

}  // namespace zsc::ppo
