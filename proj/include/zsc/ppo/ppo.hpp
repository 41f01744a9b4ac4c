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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zsc/common/error.hpp"
#include "zsc/common/rng.hpp"
#include "zsc/kitchen/rollout.hpp"
#include "zsc/nn/network.hpp"
#include "zsc/nn/rmsprop.hpp"

namespace zsc::ppo {

struct PPOConfig {
  double gamma = 0.99;
  double gae_lambda = 0.98;
  int epochs = 8;
  int rollout_length = 400;
  double clip = 0.05;
  double epsilon = 1e-5;  // RMSProp
  double learning_rate = 0.001;
  double value_coef = 0.1;
  double entropy_coef = 0.1;
  int minibatch_count = 20;
  int minibatch_size = 5000;
  // Extensions beyond the published table; the defaults leave them inert.
  double rmsprop_alpha = 0.99;
  double max_grad_norm = 0.0;  // 0 disables global-norm clipping
  double reward_scale = 1.0;   // rewards are multiplied by this before GAE

  std::string check() const;
  friend bool operator==(const PPOConfig&, const PPOConfig&) = default;

  // Shrunken preset for quick runs on one machine.
  static PPOConfig desk();
};

// Flattened on-policy samples with advantages and return targets.
struct Batch {
  int obs_size = 0;
  std::vector<double> observations;
  std::vector<int> actions;
  std::vector<double> old_log_probs;
  std::vector<double> advantages;
  std::vector<double> returns;

  std::size_t size() const { return actions.size(); }
};

// Runs GAE per trajectory and normalizes advantages over the whole batch.
Batch make_batch(std::span<const kitchen::Trajectory> trajectories, const PPOConfig& config,
                 bool normalize_advantages = true);

struct LossTerms {
  double total = 0.0;
  double policy = 0.0;       // clipped surrogate, negated
  double value = 0.0;        // mean squared error to the return target
  double entropy = 0.0;      // mean policy entropy
  double clip_fraction = 0.0;
  double surrogate = 0.0;    // mean of min(r A, clip(r) A)
};

// Loss on the samples `indices` of `batch`:
//   total = policy + value_coef * value - entropy_coef * entropy
// When `grad` is non-empty, dTotal/dparams is accumulated into it.
LossTerms ppo_loss(const nn::PolicyNetwork& net, const Batch& batch, std::span<const std::size_t> indices,
                   const PPOConfig& config, std::span<double> grad = {});

struct UpdateMetrics {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  int minibatches = 0;
  int samples = 0;
};

class NonFiniteLoss : public Error {
 public:
  NonFiniteLoss(int epoch, int minibatch)
      : Error("ppo: non-finite loss at epoch " + std::to_string(epoch) + ", minibatch " + std::to_string(minibatch)),
        epoch_(epoch),
        minibatch_(minibatch) {}
  int epoch() const { return epoch_; }
  int minibatch() const { return minibatch_; }

 private:
  int epoch_;
  int minibatch_;
};

// Owns the optimizer state for one learner network.
class PPOTrainer {
 public:
  PPOTrainer(nn::PolicyNetwork& net, PPOConfig config);

  // `epochs` passes over shuffled minibatches. On a non-finite loss the
  // parameters and optimizer state are restored and NonFiniteLoss is thrown.
  UpdateMetrics update(std::span<const kitchen::Trajectory> trajectories, Rng& rng);
  UpdateMetrics update(const Batch& batch, Rng& rng);

  const PPOConfig& config() const { return config_; }
  const nn::RMSProp& optimizer() const { return optimizer_; }
  nn::RMSProp& optimizer() { return optimizer_; }
  int updates() const { return updates_; }

 private:
  nn::PolicyNetwork& net_;
  PPOConfig config_;
  nn::RMSProp optimizer_;
  int updates_ = 0;
};

// Minibatch size used for a batch of n samples.
std::size_t effective_minibatch_size(std::size_t n, const PPOConfig& config);

void softmax(std::span<const double> logits, std::span<double> probs);
double entropy(std::span<const double> probs);

}  // namespace zsc::ppo
