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

#include <memory>
#include <string>

#include "zsc/kitchen/rollout.hpp"
#include "zsc/nn/network.hpp"

namespace zsc::ppo {

// Acts with a policy network on the ego-centric encoding. Sampling mode
// returns the softmax distribution; greedy mode puts all mass on the argmax.
class NetworkAgent final : public kitchen::Agent {
 public:
  NetworkAgent(std::shared_ptr<const nn::PolicyNetwork> net, std::string name, bool greedy = false);

  kitchen::ActionDistribution act(const kitchen::Kitchen& kitchen, const kitchen::GameState& state,
                                  int seat) const override;
  std::string name() const override { return name_; }
  const nn::PolicyNetwork& network() const { return *net_; }

 private:
  std::shared_ptr<const nn::PolicyNetwork> net_;
  std::string name_;
  bool greedy_;
};

}  // namespace zsc::ppo
