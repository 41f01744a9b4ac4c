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

namespace zsc::nn {

struct RMSPropConfig {
  double learning_rate = 1e-3;
  double alpha = 0.99;  // squared-gradient decay
  double epsilon = 1e-5;
};

// p -= lr * g / (sqrt(v) + eps), v <- alpha v + (1 - alpha) g^2.
class RMSProp {
 public:
  RMSProp(std::size_t param_count, RMSPropConfig config) : config_(config), square_avg_(param_count, 0.0) {}

  void step(std::span<double> params, std::span<const double> grad);

  const RMSPropConfig& config() const { return config_; }
  std::span<const double> state() const { return square_avg_; }
  void set_state(std::span<const double> state);

 private:
  RMSPropConfig config_;
  std::vector<double> square_avg_;
};

}  // namespace zsc::nn
