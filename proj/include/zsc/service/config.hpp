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

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "zsc/curriculum/trainer.hpp"
#include "zsc/layoutgen/generator.hpp"
#include "zsc/nn/network.hpp"
#include "zsc/ppo/ppo.hpp"

namespace zsc::service {

using nlohmann::json;

struct EvalSettings {
  int episodes = 10;       // per layout, seats alternating
  int layouts = 5;         // held-out layouts
  int pool = 40;           // candidates scored when picking them
  double proxy_epsilon = 0.1;
  std::uint64_t seed = 7;
  friend bool operator==(const EvalSettings&, const EvalSettings&) = default;
};

struct RunConfig {
  std::string layouts_dir;  // when empty the generator section is used
  layoutgen::GeneratorConfig generator;
  curriculum::CurriculumConfig curriculum;
  ppo::PPOConfig ppo;
  nn::NetworkShape network;
  int cook_time = 20;
  std::uint64_t seed = 0;
  std::string out_dir = "run";
  EvalSettings eval;

  std::string check() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  // Small enough to train on one core in a few minutes.
  static RunConfig desk();
};

// Serialization. Parsing rejects unknown keys and wrong types; missing keys
// keep their defaults.
json to_json(const ppo::PPOConfig& c);
json to_json(const curriculum::CurriculumConfig& c);
json to_json(const nn::NetworkShape& s);
json to_json(const layoutgen::GeneratorConfig& c);
json to_json(const EvalSettings& e);
json to_json(const RunConfig& c);

ppo::PPOConfig ppo_config_from_json(const json& j);
curriculum::CurriculumConfig curriculum_config_from_json(const json& j);
nn::NetworkShape network_shape_from_json(const json& j);
layoutgen::GeneratorConfig generator_config_from_json(const json& j);
EvalSettings eval_settings_from_json(const json& j);
RunConfig run_config_from_json(const json& j);

// Reads and validates a run config file. Throws zsc::Error naming the file.
RunConfig load_run_config(const std::string& path);

// Applies `--ppo.<field> value`; the value is read as JSON, falling back to
// a plain string. Throws zsc::Error for an unknown field or bad value.
void apply_ppo_override(ppo::PPOConfig& c, std::string_view field, std::string_view value);
// Field names accepted by apply_ppo_override.
std::vector<std::string> ppo_field_names();

// FNV-1a of the canonical JSON dump.
std::string config_hash(const json& j);

}  // namespace zsc::service
