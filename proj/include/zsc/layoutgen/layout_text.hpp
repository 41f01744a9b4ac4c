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

#include <string>
#include <string_view>

#include "zsc/kitchen/layout.hpp"

namespace zsc::layoutgen {

// Text format: one line per row. 'X' wall, ' ' floor, 'O' onion dispenser,
// 'D' dish dispenser, 'P' pot, 'S' serving, '1'/'2' player starts on floor.
// A trailing newline is optional. Throws zsc::ParseError with a 1-based
// line/column on unknown symbols, ragged rows, or missing/duplicate starts.
kitchen::Layout parse_layout(std::string_view text);

// Canonical form: rows joined by '\n', with a trailing newline.
std::string serialize_layout(const kitchen::Layout& layout);

char tile_symbol(kitchen::Tile t);

}  // namespace zsc::layoutgen
