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

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zsc/common/error.hpp"
#include "zsc/common/rng.hpp"
#include "zsc/kitchen/rollout.hpp"
#include "zsc/nn/network.hpp"
#include "zsc/ppo/gae.hpp"
#include "zsc/ppo/ppo.hpp"

using namespace zsc;
using namespace zsc::ppo;

namespace {

nn::NetworkShape tiny() {
  nn::NetworkShape s;
  s.height = 3;
  s.width = 3;
  s.channels = 2;
  s.conv_channels = 3;
  s.kernels = {3, 1, 1};
  s.hidden = 6;
  s.hidden_layers = 1;
  return s;
}

std::vector<double> randn(Rng& rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// Batch whose old log-probs come from a different network, so ratios are
// spread on both sides of the clip range.
Batch synthetic_batch(const nn::PolicyNetwork& net, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Batch b;
  b.obs_size = net.shape().input_size();
  b.observations = randn(rng, n * static_cast<std::size_t>(b.obs_size));
  const nn::PolicyNetwork old = nn::PolicyNetwork::initialized(net.shape(), seed + 100);
  const auto out = old.forward(b.observations, static_cast<int>(n));
  std::vector<double> probs(6);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> logits(out.logits.data() + i * 6, 6);
    softmax(logits, probs);
    const int a = static_cast<int>(uniform_index(rng, 6));
    b.actions.push_back(a);
    b.old_log_probs.push_back(std::log(probs[static_cast<std::size_t>(a)]) + 0.3 * randn(rng, 1)[0]);
  }
  b.advantages = randn(rng, n);
  b.returns = randn(rng, n);
  return b;
}

nn::PolicyNetwork lively(std::uint64_t seed) {
  nn::PolicyNetwork net = nn::PolicyNetwork::initialized(tiny(), seed, nn::Backend::Reference);
  Rng rng(seed * 31 + 1);
  for (double& w : net.action_head_weights()) w = 0.7 * randn(rng, 1)[0];
  return net;
}

}  // namespace

TEST_CASE("gae limits") {
  const std::vector<double> r = {1.0, 0.0, 2.0, -1.0};
  const std::vector<double> v = {0.5, -0.2, 0.3, 0.9};
  const double boot = 0.4, gamma = 0.9;
  const auto td = gae(r, v, boot, gamma, 0.0);
  for (std::size_t t = 0; t < r.size(); ++t) {
    const double next = t + 1 < r.size() ? v[t + 1] : boot;
    CHECK(td.advantages[t] == r[t] + gamma * next - v[t]);
    CHECK(td.returns[t] == doctest::Approx(td.advantages[t] + v[t]));
  }
  const std::vector<double> zeros(4, 0.0);
  const auto mc = gae(r, zeros, 0.0, 1.0, 1.0);
  CHECK(mc.advantages[0] == 2.0);
  CHECK(mc.advantages[1] == 1.0);
  CHECK(mc.advantages[2] == 1.0);
  CHECK(mc.advantages[3] == -1.0);
}

TEST_CASE("gae matches the double-loop oracle") {
  Rng rng(77);
  for (int len = 1; len <= 32; ++len) {
    const auto r = randn(rng, static_cast<std::size_t>(len));
    const auto v = randn(rng, static_cast<std::size_t>(len));
    const double boot = randn(rng, 1)[0];
    const double gamma = 0.9 + 0.1 * uniform01(rng), lambda = uniform01(rng);
    const auto got = gae(r, v, boot, gamma, lambda);
    const auto want = oracle::gae_double_loop(r, v, boot, gamma, lambda);
    for (int t = 0; t < len; ++t) {
      CHECK(std::abs(got.advantages[static_cast<std::size_t>(t)] - want[static_cast<std::size_t>(t)]) < 1e-12);
    }
  }
}

TEST_CASE("gae input errors") {
  const std::vector<double> one = {1.0}, two = {1.0, 2.0}, none;
  CHECK_THROWS_AS(gae(none, none, 0.0, 0.9, 0.9), Error);
  CHECK_THROWS_AS(gae(one, two, 0.0, 0.9, 0.9), Error);
  CHECK_THROWS_AS(gae(one, one, 0.0, 0.0, 0.9), Error);
}

TEST_CASE("ppo config validation and desk preset") {
  CHECK(PPOConfig{}.check().empty());
  CHECK(PPOConfig::desk().check().empty());
  PPOConfig c;
  c.clip = 0.0;
  CHECK_FALSE(c.check().empty());
  c = PPOConfig{};
  c.minibatch_count = 0;
  CHECK_FALSE(c.check().empty());
}

TEST_CASE("minibatch sizing splits evenly under the cap") {
  PPOConfig c;
  c.minibatch_count = 4;
  c.minibatch_size = 200;
  CHECK(effective_minibatch_size(400, c) == 100u);
  CHECK(effective_minibatch_size(401, c) == 101u);
  CHECK(effective_minibatch_size(2000, c) == 200u);
  CHECK(effective_minibatch_size(2, c) == 1u);
}

TEST_CASE("make_batch scales rewards, concatenates, and normalizes advantages") {
  kitchen::Trajectory a;
  a.obs_size = 2;
  a.observations = {1, 2, 3, 4};
  a.actions = {0, 5};
  a.log_probs = {-1.0, -2.0};
  a.values = {0.0, 0.0};
  a.rewards = {1.0, 3.0};
  a.dones = {0, 1};
  kitchen::Trajectory b = a;
  b.rewards = {0.0, 0.0};
  PPOConfig c;
  c.gamma = 1.0;
  c.gae_lambda = 1.0;
  c.reward_scale = 0.5;
  const std::vector<kitchen::Trajectory> trs = {a, b};
  const Batch raw = make_batch(trs, c, false);
  REQUIRE(raw.size() == 4u);
  CHECK(raw.advantages[0] == 2.0);
  CHECK(raw.advantages[1] == 1.5);
  CHECK(raw.returns[2] == 0.0);
  CHECK(raw.actions[3] == 5);
  const Batch norm = make_batch(trs, c);
  const double m = std::accumulate(norm.advantages.begin(), norm.advantages.end(), 0.0) / 4.0;
  CHECK(std::abs(m) < 1e-12);

  kitchen::Trajectory blind = a;
  blind.observations.clear();
  const std::vector<kitchen::Trajectory> bad = {blind};
  CHECK_THROWS_AS(make_batch(bad, c), Error);
}

TEST_CASE("zero advantages: no surrogate, only value and entropy move") {
  const nn::PolicyNetwork net = lively(3);
  Batch b = synthetic_batch(net, 12, 5);
  std::fill(b.advantages.begin(), b.advantages.end(), 0.0);
  std::vector<std::size_t> idx(b.size());
  std::iota(idx.begin(), idx.end(), 0);
  PPOConfig c;
  c.entropy_coef = 0.0;
  std::vector<double> g(net.param_count(), 0.0);
  const LossTerms l = ppo_loss(net, b, idx, c, g);
  CHECK(l.policy == 0.0);
  CHECK(l.surrogate == 0.0);
  // with no entropy bonus the action head gets no gradient at all
  nn::PolicyNetwork probe = net;
  std::vector<double> marker(net.param_count(), 0.0);
  probe.set_params(marker);
  for (double& w : probe.action_head_weights()) w = 1.0;
  for (double& w : probe.action_head_bias()) w = 1.0;
  for (std::size_t i = 0; i < marker.size(); ++i) {
    if (probe.params()[i] == 1.0) CHECK(g[i] == 0.0);
  }
}

TEST_CASE("ppo loss gradient matches central finite differences") {
  nn::PolicyNetwork net = lively(11);
  const Batch b = synthetic_batch(net, 16, 21);
  std::vector<std::size_t> idx(b.size());
  std::iota(idx.begin(), idx.end(), 0);
  PPOConfig c;
  c.clip = 0.2;
  c.entropy_coef = 0.05;
  c.value_coef = 0.5;

  std::vector<double> grad(net.param_count(), 0.0);
  const LossTerms at = ppo_loss(net, b, idx, c, grad);
  CHECK(at.clip_fraction > 0.0);
  CHECK(at.clip_fraction < 1.0);

  const double delta = 1e-6;
  std::vector<double> p(net.params().begin(), net.params().end());
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double keep = p[i];
    p[i] = keep + delta;
    net.set_params(p);
    const double up = ppo_loss(net, b, idx, c).total;
    p[i] = keep - delta;
    net.set_params(p);
    const double down = ppo_loss(net, b, idx, c).total;
    p[i] = keep;
    const double fd = (up - down) / (2 * delta);
    worst = std::max(worst, std::abs(fd - grad[i]) / std::max({1e-6, std::abs(fd), std::abs(grad[i])}));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("updates are deterministic and push probability toward good actions") {
  const nn::PolicyNetwork start = lively(4);
  Batch b = synthetic_batch(start, 64, 9);
  // action 2 is always good, everything else is bad
  for (std::size_t i = 0; i < b.size(); ++i) b.advantages[i] = b.actions[i] == 2 ? 1.0 : -0.2;

  auto run = [&](nn::PolicyNetwork& net) {
    PPOConfig c = PPOConfig::desk();
    c.minibatch_count = 2;
    PPOTrainer t(net, c);
    Rng rng(123);
    const UpdateMetrics m = t.update(b, rng);
    CHECK(m.minibatches == c.epochs * 2);
    CHECK(m.samples == 64);
    CHECK(t.updates() == 1);
  };
  nn::PolicyNetwork n1 = start, n2 = start;
  run(n1);
  run(n2);
  CHECK(std::equal(n1.params().begin(), n1.params().end(), n2.params().begin()));
  CHECK(n1.fingerprint() != start.fingerprint());

  auto mean_p2 = [&](const nn::PolicyNetwork& net) {
    const auto out = net.forward(b.observations, static_cast<int>(b.size()));
    std::vector<double> probs(6);
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      softmax(std::span<const double>(out.logits.data() + i * 6, 6), probs);
      s += probs[2];
    }
    return s / static_cast<double>(b.size());
  };
  CHECK(mean_p2(n1) > mean_p2(start));
}

TEST_CASE("a non-finite loss restores the parameters") {
  nn::PolicyNetwork net = lively(6);
  Batch b = synthetic_batch(net, 8, 2);
  b.returns[3] = std::numeric_limits<double>::infinity();
  const std::vector<double> before(net.params().begin(), net.params().end());
  PPOTrainer t(net, PPOConfig::desk());
  Rng rng(1);
  CHECK_THROWS_AS(t.update(b, rng), NonFiniteLoss);
  CHECK(std::equal(before.begin(), before.end(), net.params().begin()));
  CHECK(t.updates() == 0);
}

TEST_CASE("softmax and entropy") {
  const std::vector<double> logits = {0.0, 0.0, 0.0, 0.0};
  std::vector<double> p(4);
  softmax(logits, p);
  for (double x : p) CHECK(x == 0.25);
  CHECK(entropy(p) == doctest::Approx(std::log(4.0)));
  const std::vector<double> huge = {1000.0, 0.0};
  std::vector<double> q(2);
  softmax(huge, q);
  CHECK(q[0] == 1.0);
  CHECK(entropy(q) == doctest::Approx(0.0));
}
