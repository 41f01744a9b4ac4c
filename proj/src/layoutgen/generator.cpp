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

#include "zsc/layoutgen/generator.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "zsc/common/error.hpp"
#include "zsc/common/rng.hpp"
#include "zsc/layoutgen/solvability.hpp"

namespace zsc::layoutgen {

using kitchen::Layout;

std::string GeneratorConfig::check() const {
  const int cells = width * height;
  if (width < 2 || height < 2) return "grid must be at least 2x2";
  if (count < 1) return "count (M) must be >= 1";
  if (blocks_min < 4) return "blocks_min must be >= 4 (one of each interactive kind)";
  if (blocks_max < blocks_min) return "blocks_max must be >= blocks_min";
  if (min_floor < 2) return "min_floor must be >= 2 (two player cells)";
  if (min_floor + blocks_min > cells) {
    return "min_floor + blocks_min = " + std::to_string(min_floor + blocks_min) + " exceeds " +
           std::to_string(cells) + " cells";
  }
  if (min_floor + blocks_max > cells) {
    return "min_floor + blocks_max = " + std::to_string(min_floor + blocks_max) + " exceeds " +
           std::to_string(cells) + " cells";
  }
  if (dedup_hamming_min < 1) return "dedup_hamming_min must be >= 1";
  if (!(wall_fraction >= 0.0 && wall_fraction < 1.0)) return "wall_fraction must be in [0,1)";
  if (max_attempts < 0) return "max_attempts must be >= 0";
  if (batch_size < 1) return "batch_size must be >= 1";
  return {};
}

std::optional<Layout> draw_candidate(const GeneratorConfig& config, std::int64_t index) {
  Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(index)));
  const int cells = config.width * config.height;

  // Random wall/floor array.
  std::vector<Tile> grid(static_cast<std::size_t>(cells));
  for (auto& t : grid) t = bernoulli(rng, config.wall_fraction) ? Tile::Wall : Tile::Floor;

  // Interactive blocks at random cells; the first four cover every kind.
  const int n_blocks =
      config.blocks_min + static_cast<int>(uniform_index(
                              rng, static_cast<std::size_t>(config.blocks_max - config.blocks_min + 1)));
  std::vector<int> cell_order(static_cast<std::size_t>(cells));
  std::iota(cell_order.begin(), cell_order.end(), 0);
  shuffle(rng, std::span<int>(cell_order));
  for (int b = 0; b < n_blocks; ++b) {
    const Tile kind = b < 4 ? kitchen::kInteractiveTiles[static_cast<std::size_t>(b)]
                            : kitchen::kInteractiveTiles[uniform_index(rng, 4)];
    grid[static_cast<std::size_t>(cell_order[static_cast<std::size_t>(b)])] = kind;
  }

  // Two players on distinct random Floor cells.
  std::vector<int> floors;
  for (int i = 0; i < cells; ++i) {
    if (grid[static_cast<std::size_t>(i)] == Tile::Floor) floors.push_back(i);
  }
  if (floors.size() < 2) return std::nullopt;
  const std::size_t a = uniform_index(rng, floors.size());
  std::size_t b = uniform_index(rng, floors.size() - 1);
  if (b >= a) ++b;
  const auto to_pos = [&](int i) { return kitchen::Pos{i % config.width, i / config.width}; };
  const Layout raw(config.width, config.height, std::move(grid),
                   {to_pos(floors[a]), to_pos(floors[b])});

  Layout pruned = prune_unreachable(raw);
  const int blocks = pruned.interactive_count();
  if (blocks < config.blocks_min || blocks > config.blocks_max) return std::nullopt;
  if (pruned.floor_count() < config.min_floor) return std::nullopt;
  if (!solvable(pruned)) return std::nullopt;
  return pruned;
}

namespace {

// Serial acceptance shared by both drivers.
class Acceptor {
 public:
  explicit Acceptor(const GeneratorConfig& config) : config_(config) {}

  bool offer(Layout candidate, LayoutSet& out) {
    const std::vector<Tile> key(candidate.grid().begin(), candidate.grid().end());
    if (config_.dedup_hamming_min == 1) {
      if (!seen_.insert(key).second) return false;
    } else {
      for (const auto& kept : out.layouts) {
        if (hamming_distance(*kept, candidate) < config_.dedup_hamming_min) return false;
      }
    }
    out.layouts.push_back(std::make_shared<const Layout>(std::move(candidate)));
    return true;
  }

 private:
  const GeneratorConfig& config_;
  std::set<std::vector<Tile>> seen_;
};

std::int64_t attempt_cap(const GeneratorConfig& config) {
  return config.max_attempts > 0 ? config.max_attempts : std::int64_t{2000} * config.count;
}

void require_feasible(const GeneratorConfig& config) {
  if (auto why = config.check(); !why.empty()) throw Error("layout generator: " + why);
}

}  // namespace

LayoutSet generate_serial(const GeneratorConfig& config) {
  require_feasible(config);
  LayoutSet out;
  Acceptor acceptor(config);
  const std::int64_t cap = attempt_cap(config);
  std::int64_t index = 0;
  while (static_cast<int>(out.size()) < config.count && index < cap) {
    if (auto c = draw_candidate(config, index)) acceptor.offer(std::move(*c), out);
    ++index;
  }
  out.attempts = index;
  out.stalled = static_cast<int>(out.size()) < config.count;
  return out;
}

LayoutSet generate(const GeneratorConfig& config) {
  require_feasible(config);
  LayoutSet out;
  Acceptor acceptor(config);
  const std::int64_t cap = attempt_cap(config);
  const std::int64_t batch = config.batch_size;
  std::vector<std::optional<Layout>> drawn(static_cast<std::size_t>(batch));
  std::int64_t next = 0;
  while (static_cast<int>(out.size()) < config.count && next < cap) {
    const std::int64_t n = std::min(batch, cap - next);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
      drawn[static_cast<std::size_t>(i)] = draw_candidate(config, next + i);
    }
    for (std::int64_t i = 0; i < n; ++i) {
      ++next;
      auto& c = drawn[static_cast<std::size_t>(i)];
      if (c) acceptor.offer(std::move(*c), out);
      c.reset();
      if (static_cast<int>(out.size()) == config.count) break;
    }
  }
  out.attempts = next;
  out.stalled = static_cast<int>(out.size()) < config.count;
  return out;
}

}  // namespace zsc::layoutgen
