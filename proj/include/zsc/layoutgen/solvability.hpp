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

#include <optional>
#include <vector>

#include "zsc/kitchen/layout.hpp"

namespace zsc::layoutgen {

using kitchen::Pos;
using kitchen::Tile;

// A* over Floor cells with the Manhattan heuristic. `blocked` cells other
// than `from` are treated as impassable. Returns the number of moves on a
// shortest path, or nullopt.
std::optional<int> astar_distance(const kitchen::Layout& layout, Pos from, Pos to);

// True when some Floor cell orthogonally adjacent to `block` is reachable
// from `start` through Floor cells.
bool block_reachable(const kitchen::Layout& layout, Pos start, Pos block);

// One player start alone can reach an instance of every interactive kind.
bool solvable(const kitchen::Layout& layout);

// Interactive blocks not adjacent-reachable from either start become Walls.
// Idempotent.
kitchen::Layout prune_unreachable(const kitchen::Layout& layout);

// Cell-wise tile code mismatches; player starts are not part of the
// embedding. Throws zsc::Error on a dimension mismatch.
int hamming_distance(const kitchen::Layout& a, const kitchen::Layout& b);

}  // namespace zsc::layoutgen
