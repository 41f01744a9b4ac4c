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
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "zsc/eval/stats.hpp"
#include "zsc/kitchen/game.hpp"
#include "zsc/kitchen/rollout.hpp"
#include "zsc/layoutgen/generator.hpp"

namespace zsc::eval {

// mean_reward[(row * P + col) * L + layout]: the row policy is paired with
// the column policy; seats alternate between episodes.
struct CrossPlayMatrix {
  std::vector<std::string> policies;
  std::vector<std::string> layouts;
  int episodes_per_cell = 0;
  std::vector<double> mean_reward;

  std::size_t index(std::size_t row, std::size_t col, std::size_t layout) const {
    return (row * policies.size() + col) * layouts.size() + layout;
  }
  double at(std::size_t row, std::size_t col, std::size_t layout) const { return mean_reward[index(row, col, layout)]; }
  std::string check() const;
};

// Total team reward of one episode of `row` with `col` on `layout`. Episode
// e puts the row policy in seat e % 2.
using CellEpisodeFn =
    std::function<double(std::size_t row, std::size_t col, std::size_t layout, int episode, std::uint64_t seed)>;

// Cells run in parallel; each cell's mean is reduced in episode order so the
// result does not depend on the thread count.
CrossPlayMatrix cross_play(std::vector<std::string> policies, std::vector<std::string> layouts, int episodes,
                           std::uint64_t seed, const CellEpisodeFn& run_episode);

// Policy ids are the agents' names.
CrossPlayMatrix cross_play(std::span<const kitchen::Agent* const> agents,
                           std::span<const std::shared_ptr<const kitchen::Layout>> layouts, int episodes,
                           std::uint64_t seed, const kitchen::KitchenConfig& config = {});

// Per-layout min-max rescale over all policy pairs.
CrossPlayMatrix normalize(const CrossPlayMatrix& m);

struct LayoutResult {
  std::string layout_id;
  std::string policy_id;
  double mean_reward = 0.0;
  double std = 0.0;  // sample standard deviation over episodes
  int episodes = 0;
};

// Pairs `agent` with `partner` for `episodes` episodes per layout, the agent
// taking seat e % 2 in episode e. Seeds depend only on (seed, layout,
// episode), so different agents evaluated with the same seed face the same
// partner noise stream.
std::vector<LayoutResult> evaluate_pair(const kitchen::Agent& agent, const kitchen::Agent& partner,
                                        std::span<const std::shared_ptr<const kitchen::Layout>> layouts,
                                        int episodes, std::uint64_t seed, const kitchen::KitchenConfig& config = {});

// evaluate_pair against a ProxyAgent with the given noise.
std::vector<LayoutResult> evaluate_vs_proxy(const kitchen::Agent& agent,
                                            std::span<const std::shared_ptr<const kitchen::Layout>> layouts,
                                            int episodes, std::uint64_t seed,
                                            const kitchen::KitchenConfig& config = {}, double proxy_epsilon = 0.1);

// Mean over layouts of the per-layout means.
double overall_mean(std::span<const LayoutResult> results);

void write_results_csv(std::ostream& out, std::span<const LayoutResult> results);

// Held-out evaluation layouts drawn from a reserved generator seed.
inline constexpr std::uint64_t kEvalLayoutSeed = 0x5eed'e7a1'0000'0005ULL;

struct EvalLayoutSet {
  std::vector<std::shared_ptr<const kitchen::Layout>> layouts;
  std::vector<Difficulty> labels;   // label of each chosen layout within the pool
  std::vector<double> proxy_reward;  // proxy-with-proxy mean used for labelling
};

// Generates a pool with the reserved seed (skipping ids in `exclude`),
// scores each layout by proxy-with-proxy reward, and picks `count` layouts
// covering as many difficulty labels as the pool allows, easiest first.
// Remaining slots are filled in pool order.
EvalLayoutSet select_eval_layouts(const layoutgen::GeneratorConfig& base, const kitchen::KitchenConfig& config,
                                  const std::set<std::string, std::less<>>& exclude = {}, int count = 5,
                                  int pool = 40, int episodes = 2);

}  // namespace zsc::eval
