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
#include <vector>

namespace zsc::ppo {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values
};

// Generalized advantage estimation over one episode segment:
//   delta_t = r_t + gamma * v_{t+1} - v_t   (v_T = bootstrap_value)
//   A_t     = sum_k (gamma * lambda)^k delta_{t+k}
// Throws zsc::Error on empty or mismatched input or out-of-range gamma/lambda.
GaeResult gae(std::span<const double> rewards, std::span<const double> values, double bootstrap_value,
              double gamma, double lambda);

}  // namespace zsc::ppo
