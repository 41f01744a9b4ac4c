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

#include "zsc/ppo/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zsc/ppo/gae.hpp"

namespace zsc::ppo {

std::string PPOConfig::check() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) return "gamma must be in (0,1]";
  if (!(gae_lambda > 0.0 && gae_lambda <= 1.0)) return "gae_lambda must be in (0,1]";
  if (epochs < 1) return "epochs must be >= 1";
  if (rollout_length < 1) return "rollout_length must be >= 1";
  if (!(clip > 0.0 && clip < 1.0)) return "clip must be in (0,1)";
  if (!(epsilon > 0.0)) return "epsilon must be positive";
  if (!(learning_rate > 0.0)) return "learning_rate must be positive";
  if (!(value_coef > 0.0)) return "value_coef must be positive";
  if (!(entropy_coef > 0.0)) return "entropy_coef must be positive";
  if (minibatch_count < 1) return "minibatch_count must be >= 1";
  if (minibatch_size < 1) return "minibatch_size must be >= 1";
  if (!(rmsprop_alpha > 0.0 && rmsprop_alpha < 1.0)) return "rmsprop_alpha must be in (0,1)";
  if (!(max_grad_norm >= 0.0)) return "max_grad_norm must be >= 0";
  if (!(reward_scale > 0.0)) return "reward_scale must be positive";
  return {};
}

PPOConfig PPOConfig::desk() {
  PPOConfig c;
  c.rollout_length = 200;
  c.minibatch_count = 4;
  c.minibatch_size = 200;
  // the default .05 clip and .1 entropy keep a run this small near uniform
  c.clip = 0.2;
  c.entropy_coef = 0.01;
  return c;
}

void softmax(std::span<const double> logits, std::span<double> probs) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - m);
    z += probs[i];
  }
  for (double& p : probs) p /= z;
}

double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

Batch make_batch(std::span<const kitchen::Trajectory> trajectories, const PPOConfig& config,
                 bool normalize_advantages) {
  Batch batch;
  for (const auto& tr : trajectories) {
    if (auto why = tr.check(); !why.empty()) throw Error("ppo: " + why);
    if (tr.size() == 0) continue;
    if (tr.observations.empty()) throw Error("ppo: trajectory was recorded without observations");
    if (batch.obs_size == 0) batch.obs_size = tr.obs_size;
    if (tr.obs_size != batch.obs_size) throw Error("ppo: trajectories disagree on observation size");

    std::vector<double> rewards(tr.rewards);
    for (double& r : rewards) r *= config.reward_scale;
    const GaeResult g = gae(rewards, tr.values, tr.bootstrap_value, config.gamma, config.gae_lambda);
    batch.observations.insert(batch.observations.end(), tr.observations.begin(), tr.observations.end());
    batch.actions.insert(batch.actions.end(), tr.actions.begin(), tr.actions.end());
    batch.old_log_probs.insert(batch.old_log_probs.end(), tr.log_probs.begin(), tr.log_probs.end());
    batch.advantages.insert(batch.advantages.end(), g.advantages.begin(), g.advantages.end());
    batch.returns.insert(batch.returns.end(), g.returns.begin(), g.returns.end());
  }
  if (batch.size() == 0) throw Error("ppo: empty batch");
  if (normalize_advantages && batch.size() > 1) {
    const double n = static_cast<double>(batch.size());
    const double mean = std::accumulate(batch.advantages.begin(), batch.advantages.end(), 0.0) / n;
    double var = 0.0;
    for (double a : batch.advantages) var += (a - mean) * (a - mean);
    const double sd = std::sqrt(var / n);
    for (double& a : batch.advantages) a = (a - mean) / (sd + 1e-8);
  }
  return batch;
}

LossTerms ppo_loss(const nn::PolicyNetwork& net, const Batch& batch, std::span<const std::size_t> indices,
                   const PPOConfig& config, std::span<double> grad) {
  const int n = static_cast<int>(indices.size());
  if (n == 0) throw Error("ppo_loss: no samples");
  const int A = net.shape().actions;
  const auto obs_size = static_cast<std::size_t>(batch.obs_size);

  std::vector<double> obs(static_cast<std::size_t>(n) * obs_size);
  for (int i = 0; i < n; ++i) {
    const std::size_t src = indices[static_cast<std::size_t>(i)] * obs_size;
    std::copy_n(batch.observations.begin() + static_cast<std::ptrdiff_t>(src), obs_size,
                obs.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * obs_size));
  }
  nn::PolicyNetwork::Tape tape;
  const auto out = net.forward(obs, n, tape);

  LossTerms loss;
  const bool want_grad = !grad.empty();
  std::vector<double> g_logits(want_grad ? out.logits.size() : 0, 0.0);
  std::vector<double> g_values(want_grad ? out.values.size() : 0, 0.0);
  std::vector<double> probs(static_cast<std::size_t>(A));
  const double inv_n = 1.0 / n;
  int clipped = 0;
  for (int i = 0; i < n; ++i) {
    const std::size_t k = indices[static_cast<std::size_t>(i)];
    std::span<const double> logits(out.logits.data() + static_cast<std::size_t>(i) * A, static_cast<std::size_t>(A));
    softmax(logits, probs);
    const auto a = static_cast<std::size_t>(batch.actions[k]);
    const double log_p = std::log(probs[a]);
    const double ratio = std::exp(log_p - batch.old_log_probs[k]);
    const double adv = batch.advantages[k];
    const double unclipped = ratio * adv;
    const double clipped_ratio = std::clamp(ratio, 1.0 - config.clip, 1.0 + config.clip);
    const double clipped_obj = clipped_ratio * adv;
    const bool use_clipped = clipped_obj < unclipped;
    const double surrogate = use_clipped ? clipped_obj : unclipped;
    if (std::abs(ratio - 1.0) > config.clip) ++clipped;

    const double h = entropy(probs);
    const double v = out.values[static_cast<std::size_t>(i)];
    const double err = v - batch.returns[k];

    loss.surrogate += surrogate * inv_n;
    loss.policy -= surrogate * inv_n;
    loss.value += err * err * inv_n;
    loss.entropy += h * inv_n;

    if (!want_grad) continue;
    // d(surrogate)/d(log p_a): ratio * adv on the unclipped branch; the
    // clipped branch is constant in the parameters.
    const double d_logp = use_clipped ? 0.0 : -ratio * adv * inv_n;
    double* gl = g_logits.data() + static_cast<std::size_t>(i) * A;
    for (int j = 0; j < A; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double onehot = ju == a ? 1.0 : 0.0;
      // dH/dlogit_j = -p_j (log p_j + H)
      const double log_pj = probs[ju] > 0.0 ? std::log(probs[ju]) : 0.0;
      const double d_entropy = -probs[ju] * (log_pj + h);
      gl[j] = d_logp * (onehot - probs[ju]) - config.entropy_coef * d_entropy * inv_n;
    }
    g_values[static_cast<std::size_t>(i)] = config.value_coef * 2.0 * err * inv_n;
  }
  loss.clip_fraction = static_cast<double>(clipped) / n;
  loss.total = loss.policy + config.value_coef * loss.value - config.entropy_coef * loss.entropy;
  if (want_grad) net.backward(tape, g_logits, g_values, grad);
  return loss;
}

std::size_t effective_minibatch_size(std::size_t n, const PPOConfig& config) {
  const auto count = static_cast<std::size_t>(config.minibatch_count);
  const std::size_t even = (n + count - 1) / count;
  return std::max<std::size_t>(1, std::min(even, static_cast<std::size_t>(config.minibatch_size)));
}

PPOTrainer::PPOTrainer(nn::PolicyNetwork& net, PPOConfig config)
    : net_(net),
      config_(config),
      optimizer_(net.param_count(), nn::RMSPropConfig{config.learning_rate, config.rmsprop_alpha, config.epsilon}) {
  if (auto why = config_.check(); !why.empty()) throw Error("ppo config: " + why);
}

UpdateMetrics PPOTrainer::update(std::span<const kitchen::Trajectory> trajectories, Rng& rng) {
  return update(make_batch(trajectories, config_), rng);
}

UpdateMetrics PPOTrainer::update(const Batch& batch, Rng& rng) {
  if (batch.obs_size != net_.shape().input_size()) throw Error("ppo: batch observation size does not match network");
  const std::vector<double> saved_params(net_.params().begin(), net_.params().end());
  const std::vector<double> saved_state(optimizer_.state().begin(), optimizer_.state().end());

  const std::size_t n = batch.size();
  const std::size_t mb = effective_minibatch_size(n, config_);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> grad(net_.param_count());

  UpdateMetrics m;
  for (int epoch = 0; epoch < config_.epochs; ++epoch) {
    shuffle(rng, std::span<std::size_t>(order));
    int minibatch = 0;
    for (std::size_t start = 0; start < n; start += mb, ++minibatch) {
      const std::size_t len = std::min(mb, n - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      const LossTerms l = ppo_loss(net_, batch, std::span(order).subspan(start, len), config_, grad);
      double norm2 = 0.0;
      for (double g : grad) norm2 += g * g;
      if (!std::isfinite(l.total) || !std::isfinite(norm2)) {
        net_.set_params(saved_params);
        optimizer_.set_state(saved_state);
        throw NonFiniteLoss(epoch, minibatch);
      }
      if (config_.max_grad_norm > 0.0) {
        const double norm = std::sqrt(norm2);
        if (norm > config_.max_grad_norm) {
          const double s = config_.max_grad_norm / norm;
          for (double& g : grad) g *= s;
        }
      }
      optimizer_.step(net_.params(), grad);
      m.policy_loss += l.policy;
      m.value_loss += l.value;
      m.entropy += l.entropy;
      m.clip_fraction += l.clip_fraction;
      ++m.minibatches;
    }
  }
  if (m.minibatches > 0) {
    m.policy_loss /= m.minibatches;
    m.value_loss /= m.minibatches;
    m.entropy /= m.minibatches;
    m.clip_fraction /= m.minibatches;
  }
  m.samples = static_cast<int>(n);
  ++updates_;
  return m;
}

}  // namespace zsc::ppo
