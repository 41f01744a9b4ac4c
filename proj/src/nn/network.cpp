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

#include "zsc/nn/network.hpp"

#include <algorithm>
#include <cmath>

#include "zsc/common/error.hpp"
#include "zsc/common/hash.hpp"
#include "zsc/common/rng.hpp"

namespace zsc::nn {

std::string NetworkShape::check() const {
  if (height < 1 || width < 1 || channels < 1) return "input dimensions must be positive";
  if (conv_channels < 1 || hidden < 1 || hidden_layers < 1 || actions < 1) {
    return "layer widths must be positive";
  }
  for (int k : kernels) {
    if (k < 1 || k % 2 == 0) return "convolution kernels must be odd and positive";
  }
  return {};
}

PolicyNetwork::PolicyNetwork(NetworkShape shape, Backend backend) : shape_(shape), backend_(backend) {
  if (auto why = shape_.check(); !why.empty()) throw Error("network shape: " + why);
  std::size_t offset = 0;
  auto reserve = [&](std::size_t w, std::size_t b) {
    Slot s{offset, w, offset + w, b};
    offset += w + b;
    return s;
  };
  int in_channels = shape_.channels;
  for (std::size_t l = 0; l < 3; ++l) {
    conv_shapes_[l] = ConvShape{shape_.height, shape_.width, in_channels, shape_.conv_channels, shape_.kernels[l]};
    conv_[l] = reserve(static_cast<std::size_t>(conv_shapes_[l].weight_count()),
                       static_cast<std::size_t>(shape_.conv_channels));
    in_channels = shape_.conv_channels;
  }
  int in = shape_.height * shape_.width * shape_.conv_channels;
  for (int l = 0; l < shape_.hidden_layers; ++l) {
    fc_in_.push_back(in);
    fc_.push_back(reserve(static_cast<std::size_t>(in) * shape_.hidden, static_cast<std::size_t>(shape_.hidden)));
    in = shape_.hidden;
  }
  action_head_ = reserve(static_cast<std::size_t>(shape_.hidden) * shape_.actions, static_cast<std::size_t>(shape_.actions));
  value_head_ = reserve(static_cast<std::size_t>(shape_.hidden), 1);
  params_.assign(offset, 0.0);
}

std::size_t PolicyNetwork::param_count(const NetworkShape& shape) {
  return PolicyNetwork(shape).param_count();
}

PolicyNetwork PolicyNetwork::initialized(NetworkShape shape, std::uint64_t seed, Backend backend) {
  PolicyNetwork net(shape, backend);
  Rng rng(derive_seed(seed, 0x1e7));
  auto normal = [&rng]() {
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  };
  auto fill = [&](const Slot& s, double stddev) {
    for (std::size_t i = 0; i < s.weight_len; ++i) net.params_[s.weight + i] = stddev * normal();
  };
  for (std::size_t l = 0; l < 3; ++l) {
    fill(net.conv_[l], std::sqrt(2.0 / net.conv_shapes_[l].patch_size()));
  }
  for (std::size_t l = 0; l < net.fc_.size(); ++l) {
    fill(net.fc_[l], std::sqrt(2.0 / net.fc_in_[l]));
  }
  fill(net.action_head_, 0.01 / std::sqrt(static_cast<double>(shape.hidden)));
  fill(net.value_head_, 1.0 / std::sqrt(static_cast<double>(shape.hidden)));
  return net;
}

void PolicyNetwork::set_params(std::span<const double> values) {
  if (values.size() != params_.size()) {
    throw Error("set_params: expected " + std::to_string(params_.size()) + " values, got " +
                std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), params_.begin());
}

PolicyNetwork::Output PolicyNetwork::forward(std::span<const double> observations, int batch) const {
  Tape tape;
  return forward(observations, batch, tape);
}

PolicyNetwork::Output PolicyNetwork::forward(std::span<const double> observations, int batch, Tape& tape) const {
  if (batch < 1) throw Error("forward: batch must be >= 1");
  const auto in_size = static_cast<std::size_t>(shape_.input_size());
  if (observations.size() != in_size * static_cast<std::size_t>(batch)) {
    throw Error("forward: observation size " + std::to_string(observations.size()) + " does not match batch " +
                std::to_string(batch) + " x " + std::to_string(in_size) + " (height " +
                std::to_string(shape_.height) + ", width " + std::to_string(shape_.width) + ", channels " +
                std::to_string(shape_.channels) + ")");
  }
  const bool ref = backend_ == Backend::Reference;
  const auto b = static_cast<std::size_t>(batch);
  tape.batch = batch;
  tape.input.assign(observations.begin(), observations.end());

  std::span<const double> x = tape.input;
  for (std::size_t l = 0; l < 3; ++l) {
    const ConvShape& cs = conv_shapes_[l];
    const std::size_t n = b * static_cast<std::size_t>(cs.positions() * cs.out_channels);
    tape.conv_pre[l].resize(n);
    tape.conv_post[l].resize(n);
    if (ref) {
      reference::conv2d_forward(cs, batch, x, weight(conv_[l]), bias(conv_[l]), tape.conv_pre[l]);
    } else {
      parallel::conv2d_forward(cs, batch, x, weight(conv_[l]), bias(conv_[l]), tape.conv_pre[l]);
    }
    leaky_relu_forward(tape.conv_pre[l], tape.conv_post[l]);
    x = tape.conv_post[l];
  }

  tape.fc_pre.resize(fc_.size());
  tape.fc_post.resize(fc_.size());
  for (std::size_t l = 0; l < fc_.size(); ++l) {
    const std::size_t n = b * static_cast<std::size_t>(shape_.hidden);
    tape.fc_pre[l].resize(n);
    tape.fc_post[l].resize(n);
    if (ref) {
      reference::dense_forward(batch, fc_in_[l], shape_.hidden, x, weight(fc_[l]), bias(fc_[l]), tape.fc_pre[l]);
    } else {
      parallel::dense_forward(batch, fc_in_[l], shape_.hidden, x, weight(fc_[l]), bias(fc_[l]), tape.fc_pre[l]);
    }
    leaky_relu_forward(tape.fc_pre[l], tape.fc_post[l]);
    x = tape.fc_post[l];
  }

  Output out;
  out.logits.resize(b * static_cast<std::size_t>(shape_.actions));
  out.values.resize(b);
  if (ref) {
    reference::dense_forward(batch, shape_.hidden, shape_.actions, x, weight(action_head_), bias(action_head_), out.logits);
    reference::dense_forward(batch, shape_.hidden, 1, x, weight(value_head_), bias(value_head_), out.values);
  } else {
    parallel::dense_forward(batch, shape_.hidden, shape_.actions, x, weight(action_head_), bias(action_head_), out.logits);
    parallel::dense_forward(batch, shape_.hidden, 1, x, weight(value_head_), bias(value_head_), out.values);
  }
  return out;
}

void PolicyNetwork::backward(const Tape& tape, std::span<const double> grad_logits,
                             std::span<const double> grad_values, std::span<double> grad) const {
  const int batch = tape.batch;
  const auto b = static_cast<std::size_t>(batch);
  if (grad.size() != params_.size()) throw Error("backward: gradient buffer has wrong size");
  if (grad_logits.size() != b * static_cast<std::size_t>(shape_.actions) || grad_values.size() != b) {
    throw Error("backward: output gradient sizes do not match the tape batch");
  }
  const bool ref = backend_ == Backend::Reference;
  auto gslot_w = [&](const Slot& s) { return grad.subspan(s.weight, s.weight_len); };
  auto gslot_b = [&](const Slot& s) { return grad.subspan(s.bias, s.bias_len); };
  auto dense_bwd = [&](int in, int out, std::span<const double> x, const Slot& s, std::span<const double> g,
                       std::span<double> gx) {
    if (ref) {
      reference::dense_backward(batch, in, out, x, weight(s), g, gx, gslot_w(s), gslot_b(s));
    } else {
      parallel::dense_backward(batch, in, out, x, weight(s), g, gx, gslot_w(s), gslot_b(s));
    }
  };

  const std::vector<double>& last = tape.fc_post.back();
  std::vector<double> g(b * static_cast<std::size_t>(shape_.hidden), 0.0);
  dense_bwd(shape_.hidden, shape_.actions, last, action_head_, grad_logits, g);
  dense_bwd(shape_.hidden, 1, last, value_head_, grad_values, g);

  for (std::size_t l = fc_.size(); l-- > 0;) {
    leaky_relu_backward(tape.fc_pre[l], g);
    std::span<const double> x = l == 0 ? std::span<const double>(tape.conv_post[2]) : tape.fc_post[l - 1];
    std::vector<double> gx(b * static_cast<std::size_t>(fc_in_[l]), 0.0);
    dense_bwd(fc_in_[l], shape_.hidden, x, fc_[l], g, gx);
    g = std::move(gx);
  }

  for (std::size_t l = 3; l-- > 0;) {
    const ConvShape& cs = conv_shapes_[l];
    leaky_relu_backward(tape.conv_pre[l], g);
    std::span<const double> x = l == 0 ? std::span<const double>(tape.input) : tape.conv_post[l - 1];
    std::vector<double> gx;
    if (l > 0) gx.assign(b * static_cast<std::size_t>(cs.positions() * cs.in_channels), 0.0);
    if (ref) {
      reference::conv2d_backward(cs, batch, x, weight(conv_[l]), g, gx, gslot_w(conv_[l]), gslot_b(conv_[l]));
    } else {
      parallel::conv2d_backward(cs, batch, x, weight(conv_[l]), g, gx, gslot_w(conv_[l]), gslot_b(conv_[l]));
    }
    g = std::move(gx);
  }
}

std::span<double> PolicyNetwork::action_head_weights() {
  return {params_.data() + action_head_.weight, action_head_.weight_len};
}

std::span<double> PolicyNetwork::action_head_bias() {
  return {params_.data() + action_head_.bias, action_head_.bias_len};
}

std::string PolicyNetwork::fingerprint() const {
  Fnv1a h;
  h.update_i64(shape_.height);
  h.update_i64(shape_.width);
  h.update_i64(shape_.channels);
  h.update_i64(shape_.conv_channels);
  for (int k : shape_.kernels) h.update_i64(k);
  h.update_i64(shape_.hidden);
  h.update_i64(shape_.hidden_layers);
  h.update_i64(shape_.actions);
  for (double p : params_) h.update_double(p);
  return h.hex();
}

}  // namespace zsc::nn
