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

#include "zsc/layoutgen/layout_text.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "zsc/common/error.hpp"

namespace zsc::layoutgen {

using kitchen::Layout;
using kitchen::Pos;
using kitchen::Tile;

char tile_symbol(Tile t) {
  switch (t) {
    case Tile::Floor: return ' ';
    case Tile::Wall: return 'X';
    case Tile::OnionDispenser: return 'O';
    case Tile::DishDispenser: return 'D';
    case Tile::Pot: return 'P';
    case Tile::Serving: return 'S';
  }
  return '?';
}

Layout parse_layout(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(begin, end - begin);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    rows.push_back(row);
    begin = end + 1;
  }
  if (rows.empty()) throw ParseError("empty layout", 1, 1);

  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  if (width == 0) throw ParseError("empty row", 1, 1);

  std::vector<Tile> grid;
  grid.reserve(static_cast<std::size_t>(width * height));
  std::array<std::optional<Pos>, 2> starts;
  for (int y = 0; y < height; ++y) {
    const std::string_view row = rows[static_cast<std::size_t>(y)];
    if (static_cast<int>(row.size()) != width) {
      throw ParseError("ragged row: length " + std::to_string(row.size()) + ", expected " +
                           std::to_string(width),
                       y + 1, static_cast<int>(std::min<std::size_t>(row.size(), width)) + 1);
    }
    for (int x = 0; x < width; ++x) {
      const char ch = row[static_cast<std::size_t>(x)];
      Tile t = Tile::Floor;
      switch (ch) {
        case ' ': t = Tile::Floor; break;
        case 'X': t = Tile::Wall; break;
        case 'O': t = Tile::OnionDispenser; break;
        case 'D': t = Tile::DishDispenser; break;
        case 'P': t = Tile::Pot; break;
        case 'S': t = Tile::Serving; break;
        case '1':
        case '2': {
          auto& slot = starts[static_cast<std::size_t>(ch - '1')];
          if (slot) throw ParseError(std::string("duplicate player start '") + ch + "'", y + 1, x + 1);
          slot = Pos{x, y};
          break;
        }
        default:
          throw ParseError(std::string("unknown symbol '") + ch + "'", y + 1, x + 1);
      }
      grid.push_back(t);
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (!starts[static_cast<std::size_t>(i)]) {
      throw ParseError("missing player start '" + std::to_string(i + 1) + "'", height, width);
    }
  }
  return Layout(width, height, std::move(grid), {*starts[0], *starts[1]});
}

std::string serialize_layout(const Layout& layout) {
  std::string out;
  out.reserve(static_cast<std::size_t>((layout.width() + 1) * layout.height()));
  for (int y = 0; y < layout.height(); ++y) {
    for (int x = 0; x < layout.width(); ++x) {
      const Pos p{x, y};
      if (p == layout.starts()[0]) {
        out.push_back('1');
      } else if (p == layout.starts()[1]) {
        out.push_back('2');
      } else {
        out.push_back(tile_symbol(layout.at(p)));
      }
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace zsc::layoutgen
