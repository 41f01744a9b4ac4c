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

#include "zsc/curriculum/trainer.hpp"

#include <cmath>
#include <utility>

#include "zsc/common/error.hpp"
#include "zsc/curriculum/distributions.hpp"
#include "zsc/curriculum/scoring.hpp"
#include "zsc/kitchen/observation.hpp"
#include "zsc/kitchen/rollout.hpp"
#include "zsc/ppo/gae.hpp"
#include "zsc/ppo/network_agent.hpp"

namespace zsc::curriculum {

namespace {

// Seed streams derived from the master seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kDecisionStream = 2;
constexpr std::uint64_t kPpoStream = 3;
constexpr std::uint64_t kRolloutStreamBase = 1'000'000;

}  // namespace

std::string CurriculumConfig::check() const {
  if (!(staleness_coef >= 0.0 && staleness_coef <= 1.0)) return "staleness_coef must be in [0,1]";
  if (!(temperature > 0.0 && temperature <= 1.0)) return "temperature must be in (0,1]";
  if (!(replay_prob >= 0.0 && replay_prob <= 1.0)) return "replay_prob must be in [0,1]";
  if (buffer_size < 1) return "buffer_size must be >= 1";
  if (episodes_per_iter < 1) return "episodes_per_iter must be >= 1";
  if (population_capacity < 1) return "population_capacity must be >= 1";
  if (iterations < 1) return "iterations must be >= 1";
  if (!(score_smoothing > 0.0 && score_smoothing <= 1.0)) return "score_smoothing must be in (0,1]";
  return {};
}

CurriculumConfig CurriculumConfig::desk() {
  CurriculumConfig c;
  c.buffer_size = 16;
  c.episodes_per_iter = 32;
  c.population_capacity = 3;
  c.iterations = 6;
  return c;
}

std::string_view branch_name(Branch b) { return b == Branch::Replay ? "replay" : "unseen"; }

static std::shared_ptr<nn::PolicyNetwork> make_ego(TrainerConfig& config,
                                            const std::vector<std::shared_ptr<const kitchen::Layout>>& layouts) {
  if (auto why = config.curriculum.check(); !why.empty()) throw Error("curriculum config: " + why);
  if (layouts.empty()) throw Error("curriculum: empty layout set");
  config.network.height = layouts.front()->height();
  config.network.width = layouts.front()->width();
  config.network.channels = kitchen::kNumChannels;
  config.network.actions = kitchen::kNumActions;
  return std::make_shared<nn::PolicyNetwork>(
      nn::PolicyNetwork::initialized(config.network, derive_seed(config.seed, kInitStream)));
}

CurriculumTrainer::CurriculumTrainer(TrainerConfig config, std::vector<std::shared_ptr<const kitchen::Layout>> layouts)
    : config_(std::move(config)),
      layouts_(std::move(layouts)),
      ego_(make_ego(config_, layouts_)),
      trainer_(*ego_, config_.ppo),
      population_(static_cast<std::size_t>(config_.curriculum.population_capacity)),
      decision_rng_(derive_seed(config_.seed, kDecisionStream)),
      ppo_rng_(derive_seed(config_.seed, kPpoStream)) {
  for (std::size_t i = 0; i < layouts_.size(); ++i) {
    const auto& l = layouts_[i];
    if (l->width() != config_.network.width || l->height() != config_.network.height) {
      throw Error("curriculum: layout " + l->id() + " has different dimensions");
    }
    if (!layout_index_.emplace(l->id(), i).second) throw Error("curriculum: duplicate layout id " + l->id());
  }
  kitchen_config_.horizon = config_.ppo.rollout_length;
  kitchen_config_.cook_time = config_.cook_time;
  if (layouts_.size() < static_cast<std::size_t>(config_.curriculum.buffer_size)) {
    warnings_.push_back("layout set (" + std::to_string(layouts_.size()) + ") is smaller than the buffer size (" +
                        std::to_string(config_.curriculum.buffer_size) + ")");
  }
}

void CurriculumTrainer::run(const EpisodeCallback& on_episode, const IterationCallback& on_iteration) {
  while (iteration_ < config_.curriculum.iterations) {
    run_iteration(on_episode);
    if (on_iteration) on_iteration(iteration_, *this);
  }
}

void CurriculumTrainer::run_iteration(const EpisodeCallback& on_episode) {
  ++iteration_;
  const CurriculumConfig& cc = config_.curriculum;
  // With no frozen partners yet the ego plays itself, using a provisional
  // buffer that is dropped at snapshot time.
  const bool self_play = population_.empty();
  EnvBuffer provisional(static_cast<std::size_t>(cc.buffer_size), cc.scoring, cc.score_smoothing);

  for (int e = 0; e < cc.episodes_per_iter; ++e) {
    EpisodeRecord rec;
    if (self_play) {
      rec = play_episode(e, true, provisional, -1, ego_);
    } else {
      const std::size_t idx = sample_co_player(population_.members(), cc.scoring);
      CoPlayer& co = population_[idx];
      rec = play_episode(e, false, co.buffer, co.id, co.snapshot);
    }
    records_.push_back(rec);
    if (on_episode) on_episode(rec);
  }

  CoPlayer frozen;
  frozen.id = next_co_player_id_++;
  frozen.created_at = iteration_;
  frozen.snapshot = std::make_shared<const nn::PolicyNetwork>(*ego_);
  frozen.fingerprint = frozen.snapshot->fingerprint();
  frozen.buffer = EnvBuffer(static_cast<std::size_t>(cc.buffer_size), cc.scoring, cc.score_smoothing);
  population_.add(std::move(frozen));
}

EpisodeRecord CurriculumTrainer::play_episode(int episode_in_iter, bool self_play, EnvBuffer& buffer,
                                              int co_player_id,
                                              const std::shared_ptr<const nn::PolicyNetwork>& partner) {
  const CurriculumConfig& cc = config_.curriculum;
  const std::int64_t counter = ++global_counter_;

  EpisodeRecord rec;
  rec.iteration = iteration_;
  rec.episode = episode_in_iter;
  rec.global_episode = counter;
  rec.co_player = co_player_id;

  // Replay decision; fall back to the other branch when one is impossible.
  std::vector<std::size_t> unseen;
  unseen.reserve(layouts_.size());
  for (std::size_t i = 0; i < layouts_.size(); ++i) {
    if (!buffer.contains(layouts_[i]->id())) unseen.push_back(i);
  }
  bool replay = replay_decision(decision_rng_, cc.replay_prob);
  if (replay && buffer.empty()) replay = false;
  if (!replay && unseen.empty()) replay = true;

  std::size_t layout_idx;
  if (replay) {
    const auto p = replay_distribution(buffer.entries(), cc.staleness_coef, cc.temperature, counter, cc.scoring);
    const std::size_t pick = sample_categorical(decision_rng_, p);
    layout_idx = layout_index_.find(buffer.entries()[pick].layout_id)->second;
  } else {
    layout_idx = unseen[uniform_index(decision_rng_, unseen.size())];
  }
  const int ego_seat = bernoulli(decision_rng_, 0.5) ? 1 : 0;
  rec.branch = replay ? Branch::Replay : Branch::Unseen;
  rec.layout_id = layouts_[layout_idx]->id();
  rec.ego_seat = ego_seat;

  const kitchen::Kitchen kitchen(layouts_[layout_idx], kitchen_config_);
  const ppo::NetworkAgent ego_agent(ego_, "ego");
  const ppo::NetworkAgent partner_agent(partner, "co-player");
  kitchen::RolloutOptions opts;
  opts.record_observations = {false, false};
  if (replay) {
    opts.record_observations[static_cast<std::size_t>(ego_seat)] = true;
    if (self_play) opts.record_observations = {true, true};
  }
  const std::uint64_t seed = derive_seed(config_.seed, kRolloutStreamBase + static_cast<std::uint64_t>(counter));
  const kitchen::Episode ep = ego_seat == 0 ? kitchen::rollout(kitchen, ego_agent, partner_agent, seed, opts)
                                            : kitchen::rollout(kitchen, partner_agent, ego_agent, seed, opts);
  const kitchen::Trajectory& ego_traj = ep.seats[static_cast<std::size_t>(ego_seat)];

  // Score before the update so it reflects the policy that played.
  double score = 0.0;
  if (cc.scoring == Scoring::Return) {
    score = score_episode(ego_traj);
  } else {
    score = positive_value_loss_score(ego_traj, config_.ppo.gamma, config_.ppo.gae_lambda);
  }
  rec.total_reward = ep.total_reward;
  rec.score = score;

  if (replay) {
    if (self_play) {
      last_update_ = trainer_.update(std::span(ep.seats.data(), 2), ppo_rng_);
    } else {
      last_update_ = trainer_.update(std::span(&ego_traj, 1), ppo_rng_);
    }
    rec.updated = true;
    ++replay_episodes_;
  }

  if (std::isfinite(score)) {
    buffer.offer(rec.layout_id, score, counter);
  } else {
    warnings_.push_back("episode " + std::to_string(counter) + ": non-finite score on layout " + rec.layout_id +
                        "; buffer left unchanged");
  }
  rec.buffer_size = buffer.size();
  return rec;
}

}  // namespace zsc::curriculum
