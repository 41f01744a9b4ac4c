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

#include "zsc/curriculum/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zsc/common/error.hpp"

namespace zsc::curriculum {

std::vector<double> tied_ranks(std::span<const double> values, bool descending) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share the mean 1-based rank.
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

void require_non_empty(std::span<const BufferEntry> entries, const char* what) {
  if (entries.empty()) throw Error(std::string(what) + ": empty buffer");
}

}  // namespace

std::vector<double> score_distribution(std::span<const BufferEntry> entries, double beta, Scoring scoring) {
  require_non_empty(entries, "score_distribution");
  if (!(beta > 0.0 && beta <= 1.0)) throw Error("score_distribution: beta must be in (0,1]");
  std::vector<double> scores(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) scores[i] = entries[i].score;
  std::vector<double> w = tied_ranks(scores, scoring == Scoring::Return);
  double total = 0.0;
  for (double& x : w) {
    x = std::pow(x, 1.0 / beta);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> staleness_distribution(std::span<const BufferEntry> entries, std::int64_t global_counter) {
  require_non_empty(entries, "staleness_distribution");
  std::vector<double> p(entries.size());
  double total = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].last_sampled > global_counter) {
      throw Error("staleness_distribution: entry sampled after the current counter");
    }
    p[i] = static_cast<double>(global_counter - entries[i].last_sampled);
    total += p[i];
  }
  if (total <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return p;
  }
  for (double& x : p) x /= total;
  return p;
}

std::vector<double> replay_distribution(std::span<const BufferEntry> entries, double rho, double beta,
                                        std::int64_t global_counter, Scoring scoring) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw Error("replay_distribution: rho must be in [0,1]");
  const std::vector<double> ps = score_distribution(entries, beta, scoring);
  const std::vector<double> pc = staleness_distribution(entries, global_counter);
  std::vector<double> p(ps.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (1.0 - rho) * ps[i] + rho * pc[i];
  return p;
}

bool replay_decision(Rng& rng, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("replay_decision: p must be in [0,1]");
  return bernoulli(rng, p);
}

}  // namespace zsc::curriculum
