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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zsc/nn/kernels.hpp"

namespace zsc::nn {

// Conv trunk (three same-padded convolutions with LeakyReLU), flatten,
// `hidden_layers` fully connected LeakyReLU layers, then a linear action
// head and a scalar value head branching from the last hidden layer.
struct NetworkShape {
  int height = 5;
  int width = 7;
  int channels = 10;
  int conv_channels = 25;
  std::array<int, 3> kernels = {5, 3, 3};
  int hidden = 64;
  int hidden_layers = 3;
  int actions = 6;

  int input_size() const { return height * width * channels; }
  std::string check() const;
  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

class PolicyNetwork {
 public:
  struct Output {
    std::vector<double> logits;  // batch x actions
    std::vector<double> values;  // batch
  };

  // Intermediate activations retained for backward().
  struct Tape {
    int batch = 0;
    std::vector<double> input;
    std::array<std::vector<double>, 3> conv_pre;
    std::array<std::vector<double>, 3> conv_post;
    std::vector<std::vector<double>> fc_pre;
    std::vector<std::vector<double>> fc_post;
  };

  // All parameters zero.
  explicit PolicyNetwork(NetworkShape shape, Backend backend = Backend::Parallel);
  // He-normal hidden layers, near-zero action head, zero biases.
  static PolicyNetwork initialized(NetworkShape shape, std::uint64_t seed,
                                   Backend backend = Backend::Parallel);

  static std::size_t param_count(const NetworkShape& shape);

  const NetworkShape& shape() const { return shape_; }
  std::size_t param_count() const { return params_.size(); }
  std::span<const double> params() const { return params_; }
  std::span<double> params() { return params_; }
  void set_params(std::span<const double> values);

  Backend backend() const { return backend_; }
  void set_backend(Backend b) { backend_ = b; }

  // `observations` holds `batch` inputs of shape().input_size() values each.
  // Throws zsc::Error on a size mismatch.
  Output forward(std::span<const double> observations, int batch) const;
  Output forward(std::span<const double> observations, int batch, Tape& tape) const;

  // Accumulates dLoss/dparams into `grad` (size param_count()).
  void backward(const Tape& tape, std::span<const double> grad_logits,
                std::span<const double> grad_values, std::span<double> grad) const;

  // Views into the action head, used to build a uniform policy in tests.
  std::span<double> action_head_weights();
  std::span<double> action_head_bias();

  // Content hash of shape and parameters.
  std::string fingerprint() const;

 private:
  struct Slot {
    std::size_t weight = 0;
    std::size_t weight_len = 0;
    std::size_t bias = 0;
    std::size_t bias_len = 0;
  };
  std::span<const double> weight(const Slot& s) const { return {params_.data() + s.weight, s.weight_len}; }
  std::span<const double> bias(const Slot& s) const { return {params_.data() + s.bias, s.bias_len}; }

  NetworkShape shape_;
  Backend backend_;
  std::array<ConvShape, 3> conv_shapes_;
  std::array<Slot, 3> conv_;
  std::vector<Slot> fc_;
  std::vector<int> fc_in_;
  Slot action_head_;
  Slot value_head_;
  std::vector<double> params_;
};

}  // namespace zsc::nn
