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
#include <span>
#include <vector>

#include "zsc/common/rng.hpp"
#include "zsc/curriculum/buffer.hpp"

namespace zsc::curriculum {

// Rank positions with ties sharing the mean of their positions. With
// `descending`, the highest value gets rank 1.
std::vector<double> tied_ranks(std::span<const double> values, bool descending);

// P_S(i) = rank_i^(1/beta) / sum_j rank_j^(1/beta).
// Return scoring ranks scores in descending order, so the lowest-return
// entry has the largest rank and the highest probability. PositiveValueLoss
// ranks ascending, favouring high scores. Throws on an empty buffer or
// beta outside (0,1].
std::vector<double> score_distribution(std::span<const BufferEntry> entries, double beta,
                                       Scoring scoring = Scoring::Return);

// P_C(i) proportional to global_counter - last_sampled_i; uniform when every
// entry was sampled at the current counter.
std::vector<double> staleness_distribution(std::span<const BufferEntry> entries, std::int64_t global_counter);

// (1 - rho) * P_S + rho * P_C.
std::vector<double> replay_distribution(std::span<const BufferEntry> entries, double rho, double beta,
                                        std::int64_t global_counter, Scoring scoring = Scoring::Return);

// Bernoulli(p). Throws when p is outside [0,1].
bool replay_decision(Rng& rng, double p);

}  // namespace zsc::curriculum
