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

#include "zsc/layoutgen/solvability.hpp"

#include <cstdlib>
#include <queue>
#include <vector>

#include "zsc/common/error.hpp"

namespace zsc::layoutgen {

using kitchen::Layout;

std::optional<int> astar_distance(const Layout& layout, Pos from, Pos to) {
  if (!layout.is_floor(from) || !layout.is_floor(to)) return std::nullopt;
  auto heuristic = [&](Pos p) { return std::abs(p.x - to.x) + std::abs(p.y - to.y); };

  struct Node {
    int f;
    int g;
    int index;
    bool operator>(const Node& o) const {
      return f != o.f ? f > o.f : (g != o.g ? g < o.g : index > o.index);
    }
  };
  std::vector<int> best(static_cast<std::size_t>(layout.cell_count()), -1);
  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
  best[static_cast<std::size_t>(layout.index(from))] = 0;
  open.push({heuristic(from), 0, layout.index(from)});
  const int goal = layout.index(to);
  while (!open.empty()) {
    const Node n = open.top();
    open.pop();
    if (n.index == goal) return n.g;
    if (n.g > best[static_cast<std::size_t>(n.index)]) continue;
    const Pos p = layout.pos(n.index);
    for (auto d : kitchen::kDirections) {
      const Pos q = kitchen::step_toward(p, d);
      if (!layout.is_floor(q)) continue;
      const auto qi = static_cast<std::size_t>(layout.index(q));
      const int g = n.g + 1;
      if (best[qi] >= 0 && best[qi] <= g) continue;
      best[qi] = g;
      open.push({g + heuristic(q), g, static_cast<int>(qi)});
    }
  }
  return std::nullopt;
}

bool block_reachable(const Layout& layout, Pos start, Pos block) {
  for (auto d : kitchen::kDirections) {
    const Pos side = kitchen::step_toward(block, d);
    if (layout.is_floor(side) && astar_distance(layout, start, side)) return true;
  }
  return false;
}

namespace {

bool kind_reachable(const Layout& layout, Pos start, Tile kind) {
  for (int i = 0; i < layout.cell_count(); ++i) {
    const Pos p = layout.pos(i);
    if (layout.at(p) == kind && block_reachable(layout, start, p)) return true;
  }
  return false;
}

}  // namespace

bool solvable(const Layout& layout) {
  for (const Pos& start : layout.starts()) {
    bool all = true;
    for (Tile kind : kitchen::kInteractiveTiles) {
      if (!kind_reachable(layout, start, kind)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Layout prune_unreachable(const Layout& layout) {
  std::vector<Tile> grid(layout.grid().begin(), layout.grid().end());
  for (int i = 0; i < layout.cell_count(); ++i) {
    const Pos p = layout.pos(i);
    if (!kitchen::is_interactive(layout.at(p))) continue;
    const bool reachable = block_reachable(layout, layout.starts()[0], p) ||
                           block_reachable(layout, layout.starts()[1], p);
    if (!reachable) grid[static_cast<std::size_t>(i)] = Tile::Wall;
  }
  return Layout(layout.width(), layout.height(), std::move(grid), layout.starts());
}

int hamming_distance(const Layout& a, const Layout& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error("hamming_distance: dimension mismatch " + std::to_string(a.width()) + "x" +
                std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                std::to_string(b.height()));
  }
  int d = 0;
  for (std::size_t i = 0; i < a.grid().size(); ++i) d += a.grid()[i] != b.grid()[i];
  return d;
}

}  // namespace zsc::layoutgen
