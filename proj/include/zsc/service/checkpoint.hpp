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
#include <optional>
#include <string>

#include "zsc/nn/network.hpp"

namespace zsc::service {

// Binary container: "ZSCK", u32 version, u32 header length, a JSON header
// (shape, param_count, config_hash, policy_id, iteration, fingerprint) and
// then param_count little-endian doubles.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointMeta {
  std::string policy_id;
  int iteration = 0;
  std::string config_hash;
  std::string fingerprint;  // filled on save
};

struct LoadedCheckpoint {
  std::shared_ptr<nn::PolicyNetwork> net;
  CheckpointMeta meta;
};

// Writes via a temporary file and rename. Throws zsc::Error on I/O failure.
void save_checkpoint(const std::string& path, const nn::PolicyNetwork& net, CheckpointMeta meta);

// Validates magic, version, sizes and the stored fingerprint; when
// `expected` is given the shape must match it. Errors name the file.
LoadedCheckpoint load_checkpoint(const std::string& path,
                                 const std::optional<nn::NetworkShape>& expected = std::nullopt);

}  // namespace zsc::service
