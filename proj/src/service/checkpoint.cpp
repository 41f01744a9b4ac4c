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

#include "zsc/service/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "zsc/common/error.hpp"
#include "zsc/service/config.hpp"

namespace zsc::service {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'Z', 'S', 'C', 'K'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::string& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw Error("checkpoint '" + path + "': truncated");
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const nn::PolicyNetwork& net, CheckpointMeta meta) {
  meta.fingerprint = net.fingerprint();
  json header;
  header["shape"] = to_json(net.shape());
  header["param_count"] = net.param_count();
  header["config_hash"] = meta.config_hash;
  header["policy_id"] = meta.policy_id;
  header["iteration"] = meta.iteration;
  header["fingerprint"] = meta.fingerprint;
  const std::string text = header.dump();

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint '" + path + "'");
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kCheckpointVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    const auto p = net.params();
    out.write(reinterpret_cast<const char*>(p.data()), static_cast<std::streamsize>(p.size() * sizeof(double)));
    if (!out) throw Error("short write on checkpoint '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot move checkpoint into place at '" + path + "': " + ec.message());
}

LoadedCheckpoint load_checkpoint(const std::string& path, const std::optional<nn::NetworkShape>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint '" + path + "'");
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw Error("checkpoint '" + path + "': bad magic");
  const auto version = get<std::uint32_t>(in, path);
  if (version != kCheckpointVersion) {
    throw Error("checkpoint '" + path + "': unsupported version " + std::to_string(version));
  }
  const auto header_len = get<std::uint32_t>(in, path);
  if (header_len > (1u << 20)) throw Error("checkpoint '" + path + "': header too large");
  std::string text(header_len, '\0');
  if (!in.read(text.data(), header_len)) throw Error("checkpoint '" + path + "': truncated header");

  LoadedCheckpoint out;
  nn::NetworkShape shape;
  std::size_t count = 0;
  try {
    const json header = json::parse(text);
    shape = network_shape_from_json(header.at("shape"));
    count = header.at("param_count").get<std::size_t>();
    out.meta.config_hash = header.at("config_hash").get<std::string>();
    out.meta.policy_id = header.at("policy_id").get<std::string>();
    out.meta.iteration = header.at("iteration").get<int>();
    out.meta.fingerprint = header.at("fingerprint").get<std::string>();
  } catch (const std::exception& e) {
    throw Error("checkpoint '" + path + "': bad header: " + e.what());
  }
  if (auto why = shape.check(); !why.empty()) throw Error("checkpoint '" + path + "': " + why);
  if (count != nn::PolicyNetwork::param_count(shape)) {
    throw Error("checkpoint '" + path + "': parameter count does not match the stored shape");
  }
  if (expected && !(*expected == shape)) throw Error("checkpoint '" + path + "': network shape mismatch");

  std::vector<double> params(count);
  if (!in.read(reinterpret_cast<char*>(params.data()), static_cast<std::streamsize>(count * sizeof(double)))) {
    throw Error("checkpoint '" + path + "': truncated parameters");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error("checkpoint '" + path + "': trailing bytes");
  out.net = std::make_shared<nn::PolicyNetwork>(shape);
  out.net->set_params(params);
  if (out.net->fingerprint() != out.meta.fingerprint) {
    throw Error("checkpoint '" + path + "': fingerprint mismatch (corrupt parameters)");
  }
  return out;
}

}  // namespace zsc::service
