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

#include "zsc/ppo/network_agent.hpp"

#include <algorithm>

#include "zsc/common/error.hpp"
#include "zsc/kitchen/observation.hpp"
#include "zsc/ppo/ppo.hpp"

namespace zsc::ppo {

NetworkAgent::NetworkAgent(std::shared_ptr<const nn::PolicyNetwork> net, std::string name, bool greedy)
    : net_(std::move(net)), name_(std::move(name)), greedy_(greedy) {
  if (!net_) throw Error("network agent: null network");
  if (net_->shape().actions != kitchen::kNumActions) {
    throw Error("network agent '" + name_ + "': action head has " + std::to_string(net_->shape().actions) +
                " outputs, expected " + std::to_string(kitchen::kNumActions));
  }
}

kitchen::ActionDistribution NetworkAgent::act(const kitchen::Kitchen& kitchen, const kitchen::GameState& state,
                                              int seat) const {
  const kitchen::Observation obs = kitchen::encode(kitchen, state, seat);
  const auto out = net_->forward(obs.data, 1);
  kitchen::ActionDistribution d;
  softmax(out.logits, d.probs);
  d.value = out.values[0];
  if (greedy_) {
    const auto best = static_cast<std::size_t>(std::max_element(d.probs.begin(), d.probs.end()) - d.probs.begin());
    d.probs.fill(0.0);
    d.probs[best] = 1.0;
  }
  return d;
}

}  // namespace zsc::ppo
