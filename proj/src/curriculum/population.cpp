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

#include "zsc/curriculum/population.hpp"

#include <limits>

#include "zsc/common/error.hpp"

namespace zsc::curriculum {

namespace {

// Priority key of one co-player: (extreme score, created_at, layout id).
struct Key {
  double score;
  int created_at;
  std::string layout_id;
};

Key key_of(const CoPlayer& c, Scoring scoring) {
  const auto& entries = c.buffer.entries();
  if (entries.empty()) return {-std::numeric_limits<double>::infinity(), c.created_at, ""};
  const BufferEntry* best = &entries.front();
  for (const auto& e : entries) {
    const bool better = scoring == Scoring::Return ? e.score < best->score : e.score > best->score;
    if (better || (e.score == best->score && e.layout_id < best->layout_id)) best = &e;
  }
  // PositiveValueLoss wants the maximum; negate so smaller is always better.
  const double s = scoring == Scoring::Return ? best->score : -best->score;
  return {s, c.created_at, best->layout_id};
}

bool precedes(const Key& a, const Key& b) {
  if (a.score != b.score) return a.score < b.score;
  if (a.created_at != b.created_at) return a.created_at < b.created_at;
  return a.layout_id < b.layout_id;
}

}  // namespace

std::size_t sample_co_player(std::span<const CoPlayer> population, Scoring scoring) {
  if (population.empty()) throw Error("sample_co_player: empty population");
  std::size_t best = 0;
  Key best_key = key_of(population[0], scoring);
  for (std::size_t i = 1; i < population.size(); ++i) {
    Key k = key_of(population[i], scoring);
    if (precedes(k, best_key)) {
      best = i;
      best_key = std::move(k);
    }
  }
  return best;
}

std::optional<int> Population::add(CoPlayer co_player) {
  if (capacity_ == 0) throw Error("population: capacity must be >= 1");
  members_.push_back(std::move(co_player));
  if (members_.size() <= capacity_) return std::nullopt;
  const int evicted = members_.front().id;
  members_.erase(members_.begin());
  return evicted;
}

}  // namespace zsc::curriculum
