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

#include "zsc/service/config.hpp"

#include <fstream>
#include <set>

#include "zsc/common/error.hpp"
#include "zsc/common/hash.hpp"

namespace zsc::service {

namespace {

// Each visitor lists a struct's fields once; reading, writing and the CLI
// overrides all go through it.
template <class C, class F>
void visit(C& c, F&& f, const ppo::PPOConfig*) {
  f("gamma", c.gamma);
  f("gae_lambda", c.gae_lambda);
  f("epochs", c.epochs);
  f("rollout_length", c.rollout_length);
  f("clip", c.clip);
  f("epsilon", c.epsilon);
  f("learning_rate", c.learning_rate);
  f("value_coef", c.value_coef);
  f("entropy_coef", c.entropy_coef);
  f("minibatch_count", c.minibatch_count);
  f("minibatch_size", c.minibatch_size);
  f("rmsprop_alpha", c.rmsprop_alpha);
  f("max_grad_norm", c.max_grad_norm);
  f("reward_scale", c.reward_scale);
}

template <class C, class F>
void visit(C& c, F&& f, const curriculum::CurriculumConfig*) {
  f("staleness_coef", c.staleness_coef);
  f("temperature", c.temperature);
  f("replay_prob", c.replay_prob);
  f("buffer_size", c.buffer_size);
  f("episodes_per_iter", c.episodes_per_iter);
  f("population_capacity", c.population_capacity);
  f("iterations", c.iterations);
  f("scoring", c.scoring);
  f("lambda_coef", c.lambda_coef);
  f("score_smoothing", c.score_smoothing);
}

template <class C, class F>
void visit(C& c, F&& f, const nn::NetworkShape*) {
  f("height", c.height);
  f("width", c.width);
  f("channels", c.channels);
  f("conv_channels", c.conv_channels);
  f("kernels", c.kernels);
  f("hidden", c.hidden);
  f("hidden_layers", c.hidden_layers);
  f("actions", c.actions);
}

template <class C, class F>
void visit(C& c, F&& f, const layoutgen::GeneratorConfig*) {
  f("count", c.count);
  f("blocks_min", c.blocks_min);
  f("blocks_max", c.blocks_max);
  f("min_floor", c.min_floor);
  f("width", c.width);
  f("height", c.height);
  f("dedup_hamming_min", c.dedup_hamming_min);
  f("wall_fraction", c.wall_fraction);
  f("seed", c.seed);
  f("max_attempts", c.max_attempts);
  f("batch_size", c.batch_size);
}

template <class C, class F>
void visit(C& c, F&& f, const EvalSettings*) {
  f("episodes", c.episodes);
  f("layouts", c.layouts);
  f("pool", c.pool);
  f("proxy_epsilon", c.proxy_epsilon);
  f("seed", c.seed);
}

template <class C, class F>
void visit_fields(C& c, F&& f) {
  visit(c, std::forward<F>(f), static_cast<const std::remove_const_t<C>*>(nullptr));
}

json field_to_json(const curriculum::Scoring& s) { return std::string(curriculum::scoring_name(s)); }
template <class T>
json field_to_json(const T& v) {
  return json(v);
}

void field_from_json(const json& j, curriculum::Scoring& s) {
  if (!j.is_string()) throw Error("expected a string");
  s = curriculum::parse_scoring(j.get<std::string>());
}
template <class T>
void field_from_json(const json& j, T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    if (!j.is_number()) throw Error("expected a number");
    v = j.get<T>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw Error("expected an integer");
    if (std::is_unsigned_v<T> && j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0) {
      throw Error("expected a non-negative integer");
    }
    v = j.get<T>();
  } else {
    v = j.get<T>();
  }
}

template <class C>
json struct_to_json(const C& c) {
  json j = json::object();
  visit_fields(c, [&](const char* name, const auto& field) { j[name] = field_to_json(field); });
  return j;
}

template <class C>
C struct_from_json(const json& j, std::string_view what) {
  if (!j.is_object()) throw Error(std::string(what) + ": expected an object");
  C c;
  std::set<std::string, std::less<>> known;
  visit_fields(c, [&](const char* name, auto& field) {
    known.insert(name);
    if (auto it = j.find(name); it != j.end()) {
      try {
        field_from_json(*it, field);
      } catch (const std::exception& e) {
        throw Error(std::string(what) + "." + name + ": " + e.what());
      }
    }
  });
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw Error(std::string(what) + ": unknown key '" + key + "'");
  }
  return c;
}

void require_known(const json& j, std::initializer_list<std::string_view> keys, std::string_view what) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto k : keys) ok = ok || key == k;
    if (!ok) throw Error(std::string(what) + ": unknown key '" + key + "'");
  }
}

}  // namespace

std::string RunConfig::check() const {
  if (auto why = curriculum.check(); !why.empty()) return "curriculum: " + why;
  if (auto why = ppo.check(); !why.empty()) return "ppo: " + why;
  if (layouts_dir.empty()) {
    if (auto why = generator.check(); !why.empty()) return "generator: " + why;
  }
  if (cook_time < 1) return "kitchen.cook_time must be >= 1";
  if (eval.episodes < 1) return "eval.episodes must be >= 1";
  if (eval.layouts < 1 || eval.pool < eval.layouts) return "eval needs 1 <= layouts <= pool";
  if (out_dir.empty()) return "out_dir must be set";
  return {};
}

RunConfig RunConfig::desk() {
  RunConfig c;
  c.generator.count = 50;
  c.curriculum = curriculum::CurriculumConfig::desk();
  c.ppo = ppo::PPOConfig::desk();
  return c;
}

json to_json(const ppo::PPOConfig& c) { return struct_to_json(c); }
json to_json(const curriculum::CurriculumConfig& c) { return struct_to_json(c); }
json to_json(const nn::NetworkShape& s) { return struct_to_json(s); }
json to_json(const layoutgen::GeneratorConfig& c) { return struct_to_json(c); }
json to_json(const EvalSettings& e) { return struct_to_json(e); }

json to_json(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  j["layouts"] = json::object();
  if (c.layouts_dir.empty()) {
    j["layouts"]["generator"] = to_json(c.generator);
  } else {
    j["layouts"]["dir"] = c.layouts_dir;
  }
  j["curriculum"] = to_json(c.curriculum);
  j["ppo"] = to_json(c.ppo);
  j["network"] = to_json(c.network);
  j["kitchen"] = {{"cook_time", c.cook_time}};
  j["eval"] = to_json(c.eval);
  return j;
}

ppo::PPOConfig ppo_config_from_json(const json& j) { return struct_from_json<ppo::PPOConfig>(j, "ppo"); }
curriculum::CurriculumConfig curriculum_config_from_json(const json& j) {
  return struct_from_json<curriculum::CurriculumConfig>(j, "curriculum");
}
nn::NetworkShape network_shape_from_json(const json& j) { return struct_from_json<nn::NetworkShape>(j, "network"); }
layoutgen::GeneratorConfig generator_config_from_json(const json& j) {
  return struct_from_json<layoutgen::GeneratorConfig>(j, "generator");
}
EvalSettings eval_settings_from_json(const json& j) { return struct_from_json<EvalSettings>(j, "eval"); }

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw Error("run config: expected an object");
  require_known(j, {"seed", "out_dir", "layouts", "curriculum", "ppo", "network", "kitchen", "eval"}, "run config");
  RunConfig c;
  if (j.contains("seed")) field_from_json(j["seed"], c.seed);
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("layouts")) {
    const json& l = j["layouts"];
    if (!l.is_object()) throw Error("layouts: expected an object");
    require_known(l, {"dir", "generator"}, "layouts");
    if (l.contains("dir") && l.contains("generator")) throw Error("layouts: give either dir or generator, not both");
    if (l.contains("dir")) c.layouts_dir = l["dir"].get<std::string>();
    if (l.contains("generator")) c.generator = generator_config_from_json(l["generator"]);
  }
  if (j.contains("curriculum")) c.curriculum = curriculum_config_from_json(j["curriculum"]);
  if (j.contains("ppo")) c.ppo = ppo_config_from_json(j["ppo"]);
  if (j.contains("network")) c.network = network_shape_from_json(j["network"]);
  if (j.contains("kitchen")) {
    const json& k = j["kitchen"];
    if (!k.is_object()) throw Error("kitchen: expected an object");
    require_known(k, {"cook_time"}, "kitchen");
    if (k.contains("cook_time")) field_from_json(k["cook_time"], c.cook_time);
  }
  if (j.contains("eval")) c.eval = eval_settings_from_json(j["eval"]);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error("config file '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig c;
  try {
    c = run_config_from_json(j);
  } catch (const std::exception& e) {
    throw Error("config file '" + path + "': " + e.what());
  }
  if (auto why = c.check(); !why.empty()) throw Error("config file '" + path + "': " + why);
  return c;
}

void apply_ppo_override(ppo::PPOConfig& c, std::string_view field, std::string_view value) {
  json v;
  try {
    v = json::parse(value);
  } catch (const json::exception&) {
    v = std::string(value);
  }
  bool found = false;
  visit_fields(c, [&](const char* name, auto& f) {
    if (field != name) return;
    found = true;
    try {
      field_from_json(v, f);
    } catch (const std::exception& e) {
      throw Error("--ppo." + std::string(field) + ": " + e.what());
    }
  });
  if (!found) throw Error("unknown PPO field '" + std::string(field) + "'");
}

std::vector<std::string> ppo_field_names() {
  std::vector<std::string> names;
  ppo::PPOConfig c;
  visit_fields(c, [&](const char* name, auto&) { names.emplace_back(name); });
  return names;
}

std::string config_hash(const json& j) {
  Fnv1a h;
  h.update(j.dump());
  return h.hex();
}

}  // namespace zsc::service
