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

#include "zsc/kitchen/layout.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "zsc/common/error.hpp"
#include "zsc/common/hash.hpp"

namespace zsc::kitchen {

std::string_view tile_name(Tile t) {
  switch (t) {
    case Tile::Floor: return "Floor";
    case Tile::Wall: return "Wall";
    case Tile::OnionDispenser: return "OnionDispenser";
    case Tile::DishDispenser: return "DishDispenser";
    case Tile::Pot: return "Pot";
    case Tile::Serving: return "Serving";
  }
  return "?";
}

namespace {

std::string describe(Pos p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

}  // namespace

Layout::Layout(int width, int height, std::vector<Tile> grid, std::array<Pos, 2> starts)
    : width_(width), height_(height), grid_(std::move(grid)), starts_(starts) {
  if (width_ <= 0 || height_ <= 0) {
    throw Error("layout: dimensions must be positive, got " + std::to_string(width_) + "x" +
                std::to_string(height_));
  }
  if (grid_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
    throw Error("layout: grid has " + std::to_string(grid_.size()) + " cells, expected " +
                std::to_string(width_ * height_));
  }
  for (Tile t : grid_) {
    if (static_cast<int>(t) >= kNumTileKinds) throw Error("layout: unknown tile code");
  }
  for (int i = 0; i < 2; ++i) {
    const Pos s = starts_[static_cast<std::size_t>(i)];
    if (!in_bounds(s)) throw Error("layout: start " + std::to_string(i + 1) + " out of bounds at " + describe(s));
    if (at(s) != Tile::Floor) {
      throw Error("layout: start " + std::to_string(i + 1) + " at " + describe(s) + " is on " +
                  std::string(tile_name(at(s))) + ", expected Floor");
    }
  }
  if (starts_[0] == starts_[1]) throw Error("layout: player starts coincide at " + describe(starts_[0]));

  for (int i = 0; i < cell_count(); ++i) {
    if (grid_[static_cast<std::size_t>(i)] == Tile::Pot) pots_.push_back(pos(i));
  }

  Fnv1a h;
  h.update_i64(width_);
  h.update_i64(height_);
  for (Tile t : grid_) h.update_u64(static_cast<std::uint64_t>(t));
  for (const Pos& s : starts_) {
    h.update_i64(s.x);
    h.update_i64(s.y);
  }
  id_ = h.hex();
}

int Layout::count(Tile t) const {
  return static_cast<int>(std::count(grid_.begin(), grid_.end(), t));
}

int Layout::interactive_count() const {
  return static_cast<int>(std::count_if(grid_.begin(), grid_.end(), is_interactive));
}

}  // namespace zsc::kitchen
