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

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zsc::kitchen {

enum class Tile : std::uint8_t {
  Floor = 0,
  Wall = 1,
  OnionDispenser = 2,
  DishDispenser = 3,
  Pot = 4,
  Serving = 5,
};
inline constexpr int kNumTileKinds = 6;

// The four kinds a player interacts with; wall and floor are excluded.
inline constexpr std::array<Tile, 4> kInteractiveTiles = {
    Tile::OnionDispenser, Tile::Pot, Tile::DishDispenser, Tile::Serving};

constexpr bool is_interactive(Tile t) {
  return t == Tile::OnionDispenser || t == Tile::DishDispenser || t == Tile::Pot ||
         t == Tile::Serving;
}

std::string_view tile_name(Tile t);

struct Pos {
  int x = 0;
  int y = 0;
  friend constexpr auto operator<=>(const Pos&, const Pos&) = default;
};

enum class Direction : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

constexpr Pos offset(Direction d) {
  switch (d) {
    case Direction::Up: return {0, -1};
    case Direction::Down: return {0, 1};
    case Direction::Left: return {-1, 0};
    case Direction::Right: return {1, 0};
  }
  return {0, 0};
}

constexpr Pos step_toward(Pos p, Direction d) {
  const Pos o = offset(d);
  return {p.x + o.x, p.y + o.y};
}

inline constexpr std::array<Direction, 4> kDirections = {Direction::Up, Direction::Down,
                                                         Direction::Left, Direction::Right};

// Immutable kitchen geometry plus the two player start cells. The id is a
// content hash of (width, height, grid, starts).
class Layout {
 public:
  static constexpr int kDefaultWidth = 7;
  static constexpr int kDefaultHeight = 5;

  // Throws zsc::Error describing the first violated invariant.
  Layout(int width, int height, std::vector<Tile> grid, std::array<Pos, 2> starts);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }
  std::span<const Tile> grid() const { return grid_; }
  const std::array<Pos, 2>& starts() const { return starts_; }
  const std::string& id() const { return id_; }

  bool in_bounds(Pos p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }
  int index(Pos p) const { return p.y * width_ + p.x; }
  Pos pos(int index) const { return {index % width_, index / width_}; }
  // Out-of-bounds cells read as Wall.
  Tile at(Pos p) const { return in_bounds(p) ? grid_[static_cast<std::size_t>(index(p))] : Tile::Wall; }
  bool is_floor(Pos p) const { return at(p) == Tile::Floor; }

  int count(Tile t) const;
  int floor_count() const { return count(Tile::Floor); }
  int interactive_count() const;
  // Pot cells in row-major order; GameState::pots follows the same order.
  const std::vector<Pos>& pots() const { return pots_; }

  friend bool operator==(const Layout& a, const Layout& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.grid_ == b.grid_ &&
           a.starts_ == b.starts_;
  }

 private:
  int width_;
  int height_;
  std::vector<Tile> grid_;
  std::array<Pos, 2> starts_;
  std::vector<Pos> pots_;
  std::string id_;
};

}  // namespace zsc::kitchen
