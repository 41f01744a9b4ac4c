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
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "zsc/common/rng.hpp"
#include "zsc/curriculum/population.hpp"
#include "zsc/kitchen/game.hpp"
#include "zsc/nn/network.hpp"
#include "zsc/ppo/ppo.hpp"

namespace zsc::curriculum {

struct CurriculumConfig {
  double staleness_coef = 0.3;  // rho
  double temperature = 0.3;     // beta
  double replay_prob = 0.5;     // p
  int buffer_size = 1000;       // k
  int episodes_per_iter = 375;  // N
  int population_capacity = 8;
  int iterations = 8;
  Scoring scoring = Scoring::Return;
  double lambda_coef = 0.2;  // carried in configs, not used by the algorithm
  double score_smoothing = EnvBuffer::kDefaultSmoothing;

  std::string check() const;
  friend bool operator==(const CurriculumConfig&, const CurriculumConfig&) = default;

  static CurriculumConfig desk();
};

struct TrainerConfig {
  CurriculumConfig curriculum;
  ppo::PPOConfig ppo;
  nn::NetworkShape network;  // height/width are taken from the layouts
  int cook_time = 20;
  std::uint64_t seed = 0;
};

enum class Branch { Replay, Unseen };
std::string_view branch_name(Branch b);

// One line of metrics.jsonl.
struct EpisodeRecord {
  int iteration = 0;         // 1-based
  int episode = 0;           // 0-based within the iteration
  std::int64_t global_episode = 0;
  int co_player = -1;        // snapshot id; -1 is the live ego (self-play)
  std::string layout_id;
  Branch branch = Branch::Unseen;
  double score = 0.0;
  double total_reward = 0.0;
  bool updated = false;
  int ego_seat = 0;
  std::size_t buffer_size = 0;  // after the update
};

// Runs the co-player/environment curriculum: each episode samples the
// co-player whose buffer holds the lowest score, then either replays a
// buffered layout (and updates the ego with PPO) or probes a layout the
// co-player has not stored yet (no update). Every episode is scored and
// offered to that co-player's buffer. After each iteration the ego is
// frozen into the population with an empty buffer.
class CurriculumTrainer {
 public:
  using EpisodeCallback = std::function<void(const EpisodeRecord&)>;
  using IterationCallback = std::function<void(int iteration, const CurriculumTrainer&)>;

  CurriculumTrainer(TrainerConfig config, std::vector<std::shared_ptr<const kitchen::Layout>> layouts);

  // Runs all configured iterations.
  void run(const EpisodeCallback& on_episode = {}, const IterationCallback& on_iteration = {});
  // Runs the next iteration only.
  void run_iteration(const EpisodeCallback& on_episode = {});

  const TrainerConfig& config() const { return config_; }
  const nn::PolicyNetwork& ego() const { return *ego_; }
  const Population& population() const { return population_; }
  int iterations_done() const { return iteration_; }
  int ppo_updates() const { return trainer_.updates(); }
  int replay_episodes() const { return replay_episodes_; }
  std::int64_t global_counter() const { return global_counter_; }
  const std::vector<EpisodeRecord>& records() const { return records_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const ppo::UpdateMetrics& last_update() const { return last_update_; }
  const std::vector<std::shared_ptr<const kitchen::Layout>>& layouts() const { return layouts_; }
  const kitchen::KitchenConfig& kitchen_config() const { return kitchen_config_; }

 private:
  EpisodeRecord play_episode(int episode_in_iter, bool self_play, EnvBuffer& buffer, int co_player_id,
                             const std::shared_ptr<const nn::PolicyNetwork>& partner);

  TrainerConfig config_;
  std::vector<std::shared_ptr<const kitchen::Layout>> layouts_;
  std::map<std::string, std::size_t, std::less<>> layout_index_;
  kitchen::KitchenConfig kitchen_config_;
  std::shared_ptr<nn::PolicyNetwork> ego_;
  ppo::PPOTrainer trainer_;
  Population population_;
  Rng decision_rng_;
  Rng ppo_rng_;
  int iteration_ = 0;
  int next_co_player_id_ = 0;
  int replay_episodes_ = 0;
  std::int64_t global_counter_ = 0;
  std::vector<EpisodeRecord> records_;
  std::vector<std::string> warnings_;
  ppo::UpdateMetrics last_update_;
};

}  // namespace zsc::curriculum
