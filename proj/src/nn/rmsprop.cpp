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

#include "zsc/nn/rmsprop.hpp"

#include <algorithm>
#include <cmath>

#include "zsc/common/error.hpp"

namespace zsc::nn {

void RMSProp::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != square_avg_.size() || grad.size() != square_avg_.size()) {
    throw Error("rmsprop: parameter/gradient size mismatch");
  }
  const double a = config_.alpha;
  const double lr = config_.learning_rate;
  const double eps = config_.epsilon;
  for (std::size_t i = 0; i < params.size(); ++i) {
    double& v = square_avg_[i];
    v = a * v + (1.0 - a) * grad[i] * grad[i];
    params[i] -= lr * grad[i] / (std::sqrt(v) + eps);
  }
}

void RMSProp::set_state(std::span<const double> state) {
  if (state.size() != square_avg_.size()) throw Error("rmsprop: state size mismatch");
  std::copy(state.begin(), state.end(), square_avg_.begin());
}

}  // namespace zsc::nn
