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

#include <memory>
#include <string>
#include <vector>

#include "zsc/kitchen/layout.hpp"

namespace zsc::service {

using LayoutList = std::vector<std::shared_ptr<const kitchen::Layout>>;

// Writes `<id>.layout` per layout and a manifest.json listing id, file,
// per-kind block counts and floor count in set order.
void write_layout_dir(const std::string& dir, const LayoutList& layouts);

// Loads in manifest order when manifest.json exists (checking each id),
// otherwise every *.layout file sorted by name. Errors name the file.
LayoutList load_layout_dir(const std::string& dir);

kitchen::Layout read_layout_file(const std::string& path);

}  // namespace zsc::service
