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

#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zsc/curriculum/buffer.hpp"
#include "zsc/nn/network.hpp"

namespace zsc::curriculum {

struct CoPlayer {
  int id = 0;
  int created_at = 0;  // iteration that produced the snapshot
  std::shared_ptr<const nn::PolicyNetwork> snapshot;
  std::string fingerprint;  // of the snapshot at creation
  EnvBuffer buffer;
};

// Index of the co-player whose buffer holds the lowest score (highest under
// PositiveValueLoss). Empty buffers count as the most urgent. Ties go to the
// smallest created_at, then the lexicographically smallest layout id of the
// extreme entry. Throws zsc::Error on an empty population.
std::size_t sample_co_player(std::span<const CoPlayer> population, Scoring scoring = Scoring::Return);

// Ordered snapshots, oldest first. Adding beyond capacity evicts the oldest.
class Population {
 public:
  explicit Population(std::size_t capacity = 8) : capacity_(capacity) {}

  // Returns the id of the evicted co-player, if any.
  std::optional<int> add(CoPlayer co_player);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t capacity() const { return capacity_; }
  std::span<const CoPlayer> members() const { return members_; }
  std::span<CoPlayer> members() { return members_; }
  CoPlayer& operator[](std::size_t i) { return members_[i]; }
  const CoPlayer& operator[](std::size_t i) const { return members_[i]; }

 private:
  std::size_t capacity_;
  std::vector<CoPlayer> members_;
};

}  // namespace zsc::curriculum
