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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zsc/kitchen/layout.hpp"

namespace zsc::layoutgen {

struct GeneratorConfig {
  int count = 6000;          // M, target set size
  int blocks_min = 6;        // N range (interactive blocks)
  int blocks_max = 9;
  int min_floor = 14;        // E
  int width = kitchen::Layout::kDefaultWidth;
  int height = kitchen::Layout::kDefaultHeight;
  int dedup_hamming_min = 1;
  double wall_fraction = 0.3;  // chance a non-block cell starts as wall
  std::uint64_t seed = 0;
  std::int64_t max_attempts = 0;  // 0 = 2000 * count
  int batch_size = 64;            // candidates drawn per parallel round

  // Empty when feasible, otherwise why not.
  std::string check() const;
  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

struct LayoutSet {
  std::vector<std::shared_ptr<const kitchen::Layout>> layouts;
  std::int64_t attempts = 0;
  bool stalled = false;  // attempt cap reached before `count` layouts

  std::size_t size() const { return layouts.size(); }
  const kitchen::Layout& operator[](std::size_t i) const { return *layouts[i]; }
};

// Draws candidate `index` from its own seeded stream. Returns nullopt when the
// candidate is rejected before deduplication (unsolvable, too little floor,
// block count out of range after pruning).
std::optional<kitchen::Layout> draw_candidate(const GeneratorConfig& config, std::int64_t index);

// Candidates are drawn in parallel batches and accepted serially in index
// order, so the output depends only on `config`. Throws zsc::Error for an
// infeasible config; on stall, returns the partial set with `stalled` set.
LayoutSet generate(const GeneratorConfig& config);

// Single-threaded reference with identical output; kept for tests and the
// benchmark.
LayoutSet generate_serial(const GeneratorConfig& config);

}  // namespace zsc::layoutgen
