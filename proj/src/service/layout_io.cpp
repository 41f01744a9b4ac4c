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

#include "zsc/service/layout_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zsc/common/error.hpp"
#include "zsc/layoutgen/layout_text.hpp"

namespace zsc::service {

namespace fs = std::filesystem;
using nlohmann::json;

void write_layout_dir(const std::string& dir, const LayoutList& layouts) {
  fs::create_directories(dir);
  json manifest = json::array();
  for (const auto& l : layouts) {
    const std::string file = l->id() + ".layout";
    std::ofstream out(fs::path(dir) / file);
    if (!out) throw Error("cannot write layout file in '" + dir + "'");
    out << layoutgen::serialize_layout(*l);
    manifest.push_back({{"id", l->id()},
                        {"file", file},
                        {"blocks",
                         {{"onion", l->count(kitchen::Tile::OnionDispenser)},
                          {"dish", l->count(kitchen::Tile::DishDispenser)},
                          {"pot", l->count(kitchen::Tile::Pot)},
                          {"serving", l->count(kitchen::Tile::Serving)},
                          {"total", l->interactive_count()}}},
                        {"floor", l->floor_count()}});
  }
  std::ofstream out(fs::path(dir) / "manifest.json");
  if (!out) throw Error("cannot write manifest in '" + dir + "'");
  out << manifest.dump(2) << '\n';
}

kitchen::Layout read_layout_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open layout file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return layoutgen::parse_layout(ss.str());
  } catch (const std::exception& e) {
    throw Error("layout file '" + path + "': " + e.what());
  }
}

LayoutList load_layout_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("layout directory '" + dir + "' does not exist");
  LayoutList out;
  const fs::path manifest_path = fs::path(dir) / "manifest.json";
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    json manifest;
    try {
      manifest = json::parse(in);
    } catch (const json::exception& e) {
      throw Error("manifest '" + manifest_path.string() + "': " + e.what());
    }
    for (const auto& entry : manifest) {
      const std::string file = (fs::path(dir) / entry.at("file").get<std::string>()).string();
      auto layout = std::make_shared<const kitchen::Layout>(read_layout_file(file));
      if (layout->id() != entry.at("id").get<std::string>()) {
        throw Error("layout file '" + file + "' does not match its manifest id");
      }
      out.push_back(std::move(layout));
    }
  } else {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".layout") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(std::make_shared<const kitchen::Layout>(read_layout_file(f.string())));
  }
  if (out.empty()) throw Error("layout directory '" + dir + "' holds no layouts");
  return out;
}

}  // namespace zsc::service
