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

#include "zsc/eval/crossplay.hpp"

#include <cmath>
#include <iomanip>
#include <utility>

#include "zsc/common/error.hpp"
#include "zsc/common/rng.hpp"
#include "zsc/eval/proxy.hpp"

namespace zsc::eval {

std::string CrossPlayMatrix::check() const {
  if (policies.empty()) return "no policies";
  if (layouts.empty()) return "no layouts";
  if (episodes_per_cell < 1) return "episodes_per_cell must be >= 1";
  if (mean_reward.size() != policies.size() * policies.size() * layouts.size()) return "mean_reward has wrong size";
  for (double v : mean_reward) {
    if (!std::isfinite(v)) return "non-finite cell";
  }
  return {};
}

CrossPlayMatrix cross_play(std::vector<std::string> policies, std::vector<std::string> layouts, int episodes,
                           std::uint64_t seed, const CellEpisodeFn& run_episode) {
  if (policies.empty()) throw Error("cross_play: no policies");
  if (layouts.empty()) throw Error("cross_play: no layouts");
  if (episodes < 1) throw Error("cross_play: episodes must be >= 1");
  CrossPlayMatrix m;
  m.policies = std::move(policies);
  m.layouts = std::move(layouts);
  m.episodes_per_cell = episodes;
  const std::size_t P = m.policies.size(), L = m.layouts.size();
  const auto cells = static_cast<std::int64_t>(P * P * L);
  m.mean_reward.assign(static_cast<std::size_t>(cells), 0.0);

  std::vector<std::string> errors(static_cast<std::size_t>(cells));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    const std::size_t l = cu % L, col = (cu / L) % P, row = cu / (L * P);
    try {
      double total = 0.0;
      for (int e = 0; e < episodes; ++e) {
        const std::uint64_t s = derive_seed(derive_seed(seed, cu), static_cast<std::uint64_t>(e));
        total += run_episode(row, col, l, e, s);
      }
      m.mean_reward[cu] = total / episodes;
    } catch (const std::exception& ex) {
      errors[cu] = m.policies[row] + " x " + m.policies[col] + " on " + m.layouts[l] + ": " + ex.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error("cross_play: " + e);
  }
  return m;
}

CrossPlayMatrix cross_play(std::span<const kitchen::Agent* const> agents,
                           std::span<const std::shared_ptr<const kitchen::Layout>> layouts, int episodes,
                           std::uint64_t seed, const kitchen::KitchenConfig& config) {
  std::vector<std::string> ids, layout_ids;
  for (const auto* a : agents) {
    if (a == nullptr) throw Error("cross_play: null agent");
    ids.push_back(a->name());
  }
  std::vector<kitchen::Kitchen> kitchens;
  for (const auto& l : layouts) {
    layout_ids.push_back(l->id());
    kitchens.emplace_back(l, config);
  }
  kitchen::RolloutOptions opts;
  opts.record_observations = {false, false};
  return cross_play(std::move(ids), std::move(layout_ids), episodes, seed,
                    [&](std::size_t row, std::size_t col, std::size_t l, int e, std::uint64_t s) {
                      const auto& k = kitchens[l];
                      return e % 2 == 0 ? kitchen::rollout(k, *agents[row], *agents[col], s, opts).total_reward
                                        : kitchen::rollout(k, *agents[col], *agents[row], s, opts).total_reward;
                    });
}

CrossPlayMatrix normalize(const CrossPlayMatrix& m) {
  if (auto why = m.check(); !why.empty()) throw Error("normalize: " + why);
  CrossPlayMatrix out = m;
  const std::size_t P = m.policies.size();
  std::vector<double> slice(P * P);
  for (std::size_t l = 0; l < m.layouts.size(); ++l) {
    for (std::size_t r = 0; r < P; ++r) {
      for (std::size_t c = 0; c < P; ++c) slice[r * P + c] = m.at(r, c, l);
    }
    const auto n = normalize_slice(slice);
    for (std::size_t r = 0; r < P; ++r) {
      for (std::size_t c = 0; c < P; ++c) out.mean_reward[m.index(r, c, l)] = n[r * P + c];
    }
  }
  return out;
}

std::vector<LayoutResult> evaluate_pair(const kitchen::Agent& agent, const kitchen::Agent& partner,
                                        std::span<const std::shared_ptr<const kitchen::Layout>> layouts,
                                        int episodes, std::uint64_t seed, const kitchen::KitchenConfig& config) {
  if (episodes < 1) throw Error("evaluate: episodes must be >= 1");
  if (layouts.empty()) throw Error("evaluate: no layouts");
  const std::size_t L = layouts.size();
  const auto E = static_cast<std::size_t>(episodes);
  std::vector<double> rewards(L * E, 0.0);
  std::vector<std::string> errors(L * E);
  kitchen::RolloutOptions opts;
  opts.record_observations = {false, false};
  const auto jobs = static_cast<std::int64_t>(L * E);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t j = 0; j < jobs; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const std::size_t l = ju / E, e = ju % E;
    try {
      const kitchen::Kitchen k(layouts[l], config);
      const std::uint64_t s = derive_seed(derive_seed(seed, l), e);
      rewards[ju] = e % 2 == 0 ? kitchen::rollout(k, agent, partner, s, opts).total_reward
                               : kitchen::rollout(k, partner, agent, s, opts).total_reward;
    } catch (const std::exception& ex) {
      errors[ju] = layouts[l]->id() + ": " + ex.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error("evaluate: " + e);
  }
  std::vector<LayoutResult> out;
  for (std::size_t l = 0; l < L; ++l) {
    std::span<const double> r(rewards.data() + l * E, E);
    out.push_back({layouts[l]->id(), agent.name(), mean(r), sample_stddev(r), episodes});
  }
  return out;
}

std::vector<LayoutResult> evaluate_vs_proxy(const kitchen::Agent& agent,
                                            std::span<const std::shared_ptr<const kitchen::Layout>> layouts,
                                            int episodes, std::uint64_t seed, const kitchen::KitchenConfig& config,
                                            double proxy_epsilon) {
  const ProxyAgent proxy(proxy_epsilon);
  return evaluate_pair(agent, proxy, layouts, episodes, seed, config);
}

double overall_mean(std::span<const LayoutResult> results) {
  if (results.empty()) return 0.0;
  double t = 0.0;
  for (const auto& r : results) t += r.mean_reward;
  return t / static_cast<double>(results.size());
}

void write_results_csv(std::ostream& out, std::span<const LayoutResult> results) {
  out << "layout_id,policy_id,mean_reward,std,episodes\n";
  out << std::setprecision(17);
  for (const auto& r : results) {
    out << r.layout_id << ',' << r.policy_id << ',' << r.mean_reward << ',' << r.std << ',' << r.episodes << '\n';
  }
}

EvalLayoutSet select_eval_layouts(const layoutgen::GeneratorConfig& base, const kitchen::KitchenConfig& config,
                                  const std::set<std::string, std::less<>>& exclude, int count, int pool,
                                  int episodes) {
  if (count < 1 || pool < count) throw Error("select_eval_layouts: need 1 <= count <= pool");
  layoutgen::GeneratorConfig gc = base;
  gc.seed = kEvalLayoutSeed;
  gc.count = pool + static_cast<int>(exclude.size());
  gc.max_attempts = 0;
  const layoutgen::LayoutSet generated = layoutgen::generate(gc);
  std::vector<std::shared_ptr<const kitchen::Layout>> candidates;
  for (const auto& l : generated.layouts) {
    if (static_cast<int>(candidates.size()) == pool) break;
    if (!exclude.contains(l->id())) candidates.push_back(l);
  }
  if (static_cast<int>(candidates.size()) < count) throw Error("select_eval_layouts: generator produced too few layouts");

  const ProxyAgent proxy(0.1);
  const auto scores = evaluate_pair(proxy, proxy, candidates, episodes, derive_seed(kEvalLayoutSeed, 1), config);
  std::vector<double> reward;
  for (const auto& s : scores) reward.push_back(s.mean_reward);
  const auto labels = classify_difficulty(reward);

  std::vector<bool> taken(candidates.size(), false);
  EvalLayoutSet out;
  auto take = [&](std::size_t i) {
    taken[i] = true;
    out.layouts.push_back(candidates[i]);
    out.labels.push_back(labels[i]);
    out.proxy_reward.push_back(reward[i]);
  };
  for (int d = 0; d < kNumDifficulties && static_cast<int>(out.layouts.size()) < count; ++d) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (labels[i] == static_cast<Difficulty>(d)) {
        take(i);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < candidates.size() && static_cast<int>(out.layouts.size()) < count; ++i) {
    if (!taken[i]) take(i);
  }
  return out;
}

}  // namespace zsc::eval
