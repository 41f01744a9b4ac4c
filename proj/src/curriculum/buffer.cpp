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

#include "zsc/curriculum/buffer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "zsc/common/error.hpp"

namespace zsc::curriculum {

std::string_view scoring_name(Scoring s) {
  return s == Scoring::Return ? "return" : "positive_value_loss";
}

Scoring parse_scoring(std::string_view name) {
  if (name == "return") return Scoring::Return;
  if (name == "positive_value_loss") return Scoring::PositiveValueLoss;
  throw Error("unknown scoring '" + std::string(name) + "' (expected return | positive_value_loss)");
}

EnvBuffer::EnvBuffer(std::size_t capacity, Scoring scoring, double smoothing)
    : capacity_(capacity), scoring_(scoring), smoothing_(smoothing) {
  if (capacity_ == 0) throw Error("env buffer: capacity must be >= 1");
  if (!(smoothing_ > 0.0 && smoothing_ <= 1.0)) throw Error("env buffer: smoothing must be in (0,1]");
}

std::optional<std::size_t> EnvBuffer::find(std::string_view layout_id) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].layout_id == layout_id) return i;
  }
  return std::nullopt;
}

std::optional<double> EnvBuffer::min_score() const {
  if (entries_.empty()) return std::nullopt;
  return std::min_element(entries_.begin(), entries_.end(),
                          [](const auto& a, const auto& b) { return a.score < b.score; })
      ->score;
}

std::optional<double> EnvBuffer::max_score() const {
  if (entries_.empty()) return std::nullopt;
  return std::max_element(entries_.begin(), entries_.end(),
                          [](const auto& a, const auto& b) { return a.score < b.score; })
      ->score;
}

OfferResult EnvBuffer::offer(std::string_view layout_id, double score, std::int64_t global_counter) {
  if (!std::isfinite(score)) throw Error("env buffer: non-finite score for layout " + std::string(layout_id));
  if (auto i = find(layout_id)) {
    BufferEntry& e = entries_[*i];
    e.score = (1.0 - smoothing_) * e.score + smoothing_ * score;
    e.last_sampled = global_counter;
    ++e.visits;
    return {OfferOutcome::Rescored, std::nullopt};
  }
  if (entries_.size() < capacity_) {
    entries_.push_back(BufferEntry{std::string(layout_id), score, global_counter, 1});
    return {OfferOutcome::Inserted, std::nullopt};
  }

  // Full: the least useful entry is the highest score under Return scoring
  // and the lowest under PositiveValueLoss. Ties evict the smallest id.
  const bool keep_low = scoring_ == Scoring::Return;
  std::size_t worst = 0;
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    const auto& c = entries_[i];
    const auto& w = entries_[worst];
    const bool worse = keep_low ? c.score > w.score : c.score < w.score;
    if (worse || (c.score == w.score && c.layout_id < w.layout_id)) worst = i;
  }
  const bool admit = keep_low ? score < entries_[worst].score : score > entries_[worst].score;
  if (!admit) return {OfferOutcome::Rejected, std::nullopt};
  OfferResult r{OfferOutcome::Replaced, entries_[worst].layout_id};
  entries_[worst] = BufferEntry{std::string(layout_id), score, global_counter, 1};
  return r;
}

void EnvBuffer::restore(std::vector<BufferEntry> entries) {
  if (entries.size() > capacity_) throw Error("env buffer: restored entries exceed capacity");
  std::set<std::string> ids;
  for (const auto& e : entries) {
    if (!std::isfinite(e.score)) throw Error("env buffer: restored entry has a non-finite score");
    if (!ids.insert(e.layout_id).second) throw Error("env buffer: duplicate layout id " + e.layout_id);
  }
  entries_ = std::move(entries);
}

}  // namespace zsc::curriculum
