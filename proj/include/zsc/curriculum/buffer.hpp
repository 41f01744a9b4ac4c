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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zsc::curriculum {

// Return keeps and prioritizes the lowest scores; PositiveValueLoss flips
// every direction to favour high scores.
enum class Scoring { Return, PositiveValueLoss };

std::string_view scoring_name(Scoring s);
Scoring parse_scoring(std::string_view name);  // "return" | "positive_value_loss"

struct BufferEntry {
  std::string layout_id;
  double score = 0.0;
  std::int64_t last_sampled = 0;  // global episode counter at last touch
  std::int64_t visits = 0;
};

enum class OfferOutcome { Inserted, Rescored, Replaced, Rejected };

struct OfferResult {
  OfferOutcome outcome = OfferOutcome::Rejected;
  std::optional<std::string> evicted;  // set for Replaced
};

// Per-co-player store of at most `capacity` environments. Under Return
// scoring a full buffer admits a new layout only if its score is below the
// current maximum, which it then evicts; the buffer therefore tracks the
// lowest-return environments seen.
class EnvBuffer {
 public:
  static constexpr double kDefaultSmoothing = 0.3;

  explicit EnvBuffer(std::size_t capacity = 1000, Scoring scoring = Scoring::Return,
                     double smoothing = kDefaultSmoothing);

  // Re-offering a stored layout blends the score as
  //   S <- (1 - smoothing) * S + smoothing * S_new
  // and refreshes last_sampled. Throws zsc::Error for a non-finite score.
  OfferResult offer(std::string_view layout_id, double score, std::int64_t global_counter);

  const std::vector<BufferEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t capacity() const { return capacity_; }
  Scoring scoring() const { return scoring_; }
  double smoothing() const { return smoothing_; }

  bool contains(std::string_view layout_id) const { return find(layout_id).has_value(); }
  std::optional<std::size_t> find(std::string_view layout_id) const;

  // Lowest / highest stored score; nullopt when empty.
  std::optional<double> min_score() const;
  std::optional<double> max_score() const;

  // Restores entries verbatim (checkpoint loading). Throws on violations.
  void restore(std::vector<BufferEntry> entries);

 private:
  std::size_t capacity_;
  Scoring scoring_;
  double smoothing_;
  std::vector<BufferEntry> entries_;
};

}  // namespace zsc::curriculum
