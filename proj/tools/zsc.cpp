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

// Command-line entry point: layoutgen, config, train, eval, serve.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "zsc/common/error.hpp"
#include "zsc/eval/crossplay.hpp"
#include "zsc/layoutgen/generator.hpp"
#include "zsc/ppo/network_agent.hpp"
#include "zsc/service/checkpoint.hpp"
#include "zsc/service/config.hpp"
#include "zsc/service/layout_io.hpp"
#include "zsc/service/run.hpp"
#include "zsc/service/server.hpp"

namespace {

using namespace zsc;
using service::json;

std::atomic<bool> g_stop{false};
void on_signal(int) { g_stop = true; }

struct LoadedPolicies {
  std::vector<service::PolicyEntry> entries;
};

// Policy ids come from the checkpoint header; repeats get a #k suffix.
LoadedPolicies load_policies(const std::vector<std::string>& paths) {
  LoadedPolicies out;
  std::map<std::string, int> seen;
  for (const auto& p : paths) {
    service::LoadedCheckpoint ck;
    try {
      ck = service::load_checkpoint(p);
    } catch (const std::exception& e) {
      throw Error(std::string("policy from '") + p + "': " + e.what());
    }
    std::string id = ck.meta.policy_id.empty() ? std::filesystem::path(p).stem().string() : ck.meta.policy_id;
    if (int n = seen[id]++; n > 0) id += "#" + std::to_string(n + 1);
    out.entries.push_back({id, ck.net, ck.meta.iteration, ck.meta.fingerprint});
  }
  return out;
}

kitchen::KitchenConfig kitchen_config(int horizon, int cook_time) {
  kitchen::KitchenConfig kc;
  kc.horizon = horizon;
  kc.cook_time = cook_time;
  return kc;
}

json nested_matrix(const eval::CrossPlayMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.policies.size(); ++r) {
    json cols = json::array();
    for (std::size_t c = 0; c < m.policies.size(); ++c) {
      json cells = json::array();
      for (std::size_t l = 0; l < m.layouts.size(); ++l) cells.push_back(m.at(r, c, l));
      cols.push_back(cells);
    }
    rows.push_back(cols);
  }
  return rows;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-player and environment curriculum for zero-shot coordination in a grid kitchen"};
  app.require_subcommand(1);

  // layoutgen
  auto* gen = app.add_subcommand("layoutgen", "Generate a solvable, deduplicated layout set");
  layoutgen::GeneratorConfig gc;
  std::string gen_out;
  gen->add_option("--count", gc.count, "Number of layouts (M)")->capture_default_str();
  gen->add_option("--blocks-min", gc.blocks_min, "Fewest interactive blocks")->capture_default_str();
  gen->add_option("--blocks-max", gc.blocks_max, "Most interactive blocks")->capture_default_str();
  gen->add_option("--min-floor", gc.min_floor, "Fewest floor cells (E)")->capture_default_str();
  gen->add_option("--width", gc.width)->capture_default_str();
  gen->add_option("--height", gc.height)->capture_default_str();
  gen->add_option("--hamming", gc.dedup_hamming_min, "Minimum pairwise Hamming distance")->capture_default_str();
  gen->add_option("--wall-fraction", gc.wall_fraction)->capture_default_str();
  gen->add_option("--max-attempts", gc.max_attempts, "Candidate cap (0 = 2000 x count)")->capture_default_str();
  gen->add_option("--seed", gc.seed)->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();

  // config
  auto* cfg = app.add_subcommand("config", "Print a run configuration to stdout");
  bool cfg_desk = false;
  cfg->add_flag("--desk", cfg_desk, "Shrunken preset for a single machine");

  // train
  auto* train = app.add_subcommand("train", "Run the curriculum trainer into a run directory");
  std::string train_config;
  std::optional<std::uint64_t> train_seed;
  std::optional<std::string> train_out;
  bool train_quiet = false;
  train->add_option("--config", train_config, "Run configuration JSON")->required();
  train->add_option("--seed", train_seed, "Override the master seed");
  train->add_option("--out", train_out, "Override the output directory");
  train->add_flag("--quiet", train_quiet, "No progress output");
  std::map<std::string, std::string> ppo_overrides;
  for (const auto& field : service::ppo_field_names()) {
    train->add_option_function<std::string>(
        "--ppo." + field, [&ppo_overrides, field](const std::string& v) { ppo_overrides[field] = v; },
        "Override ppo." + field);
  }

  // eval
  auto* ev = app.add_subcommand("eval", "Evaluate checkpoints");
  ev->require_subcommand(1);
  auto* xp = ev->add_subcommand("cross-play", "Cross-play matrix between checkpoints");
  std::vector<std::string> xp_ckpts;
  std::string xp_layouts, xp_out;
  int xp_episodes = 10, xp_horizon = 400, xp_cook = 20;
  std::uint64_t xp_seed = 0;
  xp->add_option("--checkpoints", xp_ckpts, "Checkpoint files")->required()->check(CLI::ExistingFile);
  xp->add_option("--layouts", xp_layouts, "Layout directory")->required();
  xp->add_option("--episodes", xp_episodes, "Episodes per cell")->capture_default_str();
  xp->add_option("--seed", xp_seed)->capture_default_str();
  xp->add_option("--horizon", xp_horizon)->capture_default_str();
  xp->add_option("--cook-time", xp_cook)->capture_default_str();
  xp->add_option("--out", xp_out, "Matrix JSON")->required();

  auto* px = ev->add_subcommand("proxy", "Pair a checkpoint with the scripted proxy partner");
  std::string px_ckpt, px_layouts, px_out;
  int px_episodes = 10, px_horizon = 400, px_cook = 20, px_count = 5;
  std::uint64_t px_seed = 0;
  double px_eps = 0.1;
  bool px_baseline = false;
  px->add_option("--checkpoint", px_ckpt, "Checkpoint file")->required()->check(CLI::ExistingFile);
  px->add_option("--layouts", px_layouts, "Layout directory (default: held-out selection)");
  px->add_option("--count", px_count, "Held-out layouts when --layouts is not given")->capture_default_str();
  px->add_option("--episodes", px_episodes, "Episodes per layout, seats alternating")->capture_default_str();
  px->add_option("--seed", px_seed)->capture_default_str();
  px->add_option("--horizon", px_horizon)->capture_default_str();
  px->add_option("--cook-time", px_cook)->capture_default_str();
  px->add_option("--epsilon", px_eps, "Proxy action noise")->capture_default_str();
  px->add_flag("--baseline", px_baseline, "Also evaluate a uniform-random policy");
  px->add_option("--out", px_out, "Results CSV")->required();

  // serve
  auto* sv = app.add_subcommand("serve", "Host live human-agent play sessions over HTTP/WebSocket");
  std::vector<std::string> sv_ckpts;
  std::string sv_layouts, sv_logs = "sessions", sv_address = "127.0.0.1";
  std::optional<int> sv_port;
  int sv_tick = 200, sv_horizon = 400, sv_cook = 20, sv_threads = 2;
  bool sv_greedy = false;
  std::uint64_t sv_seed = 0;
  sv->add_option("--checkpoints", sv_ckpts, "Checkpoint files")->required()->check(CLI::ExistingFile);
  sv->add_option("--layouts", sv_layouts, "Layout directory")->required();
  sv->add_option("--port", sv_port, "Listen port (default $ZSC_PORT, else 8080)");
  sv->add_option("--address", sv_address)->capture_default_str();
  sv->add_option("--log-dir", sv_logs, "Session logs")->capture_default_str();
  sv->add_option("--tick-ms", sv_tick, "Default realtime tick")->capture_default_str();
  sv->add_option("--horizon", sv_horizon)->capture_default_str();
  sv->add_option("--cook-time", sv_cook)->capture_default_str();
  sv->add_option("--threads", sv_threads)->capture_default_str();
  sv->add_option("--seed", sv_seed)->capture_default_str();
  sv->add_flag("--greedy", sv_greedy, "Agent takes its most likely action instead of sampling");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const layoutgen::LayoutSet set = layoutgen::generate(gc);
      service::write_layout_dir(gen_out, set.layouts);
      std::cout << "wrote " << set.size() << " layouts to " << gen_out << " (" << set.attempts << " candidates)\n";
      if (set.stalled) {
        std::cerr << "zsc: generator stalled at " << set.size() << " of " << gc.count << " layouts\n";
        return 2;
      }
      return 0;
    }

    if (*cfg) {
      const service::RunConfig c = cfg_desk ? service::RunConfig::desk() : service::RunConfig{};
      std::cout << service::to_json(c).dump(2) << '\n';
      return 0;
    }

    if (*train) {
      service::RunConfig c = service::load_run_config(train_config);
      if (train_seed) c.seed = *train_seed;
      if (train_out) c.out_dir = *train_out;
      for (const auto& [field, value] : ppo_overrides) service::apply_ppo_override(c.ppo, field, value);
      if (auto why = c.check(); !why.empty()) throw Error(why);
      const auto s = service::train_run(c, train_quiet ? nullptr : &std::cout);
      std::cout << "finished " << s.iterations << " iterations, " << s.ppo_updates << " PPO updates, run in "
                << s.out_dir << '\n';
      return 0;
    }

    if (*xp) {
      const auto policies = load_policies(xp_ckpts);
      const auto layouts = service::load_layout_dir(xp_layouts);
      std::vector<std::unique_ptr<ppo::NetworkAgent>> agents;
      std::vector<const kitchen::Agent*> ptrs;
      for (const auto& p : policies.entries) {
        agents.push_back(std::make_unique<ppo::NetworkAgent>(p.net, p.id));
        ptrs.push_back(agents.back().get());
      }
      const auto m = eval::cross_play(ptrs, layouts, xp_episodes, xp_seed, kitchen_config(xp_horizon, xp_cook));
      const json out = {{"policies", m.policies},
                        {"layouts", m.layouts},
                        {"episodes_per_cell", m.episodes_per_cell},
                        {"seed", xp_seed},
                        {"mean_reward", nested_matrix(m)},
                        {"normalized", nested_matrix(eval::normalize(m))}};
      write_text(xp_out, out.dump(2) + "\n");
      std::cout << "wrote " << xp_out << '\n';
      return 0;
    }

    if (*px) {
      const auto policies = load_policies({px_ckpt});
      const auto kc = kitchen_config(px_horizon, px_cook);
      service::LayoutList layouts;
      if (!px_layouts.empty()) {
        layouts = service::load_layout_dir(px_layouts);
      } else {
        layouts = eval::select_eval_layouts(layoutgen::GeneratorConfig{}, kc, {}, px_count).layouts;
      }
      const auto& p = policies.entries.front();
      const ppo::NetworkAgent agent(p.net, p.id);
      auto results = eval::evaluate_vs_proxy(agent, layouts, px_episodes, px_seed, kc, px_eps);
      if (px_baseline) {
        const kitchen::UniformRandomAgent random;
        const auto base = eval::evaluate_vs_proxy(random, layouts, px_episodes, px_seed, kc, px_eps);
        results.insert(results.end(), base.begin(), base.end());
      }
      std::ofstream out(px_out);
      if (!out) throw Error("cannot write '" + px_out + "'");
      eval::write_results_csv(out, results);
      std::cout << "wrote " << px_out << '\n';
      return 0;
    }

    if (*sv) {
      service::ServerConfig sc;
      sc.policies = load_policies(sv_ckpts).entries;
      sc.layouts = service::load_layout_dir(sv_layouts);
      sc.kitchen = kitchen_config(sv_horizon, sv_cook);
      sc.log_dir = sv_logs;
      sc.greedy = sv_greedy;
      sc.address = sv_address;
      sc.threads = sv_threads;
      sc.default_tick_ms = sv_tick;
      sc.seed = sv_seed;
      int port = 8080;
      if (const char* env = std::getenv("ZSC_PORT")) port = std::atoi(env);
      if (sv_port) port = *sv_port;
      if (port < 0 || port > 65535) throw Error("port out of range");
      sc.port = static_cast<unsigned short>(port);
      service::Server server(sc);
      const unsigned short bound = server.start();
      std::cout << "serving " << sc.policies.size() << " policies and " << sc.layouts.size() << " layouts on http://"
                << sv_address << ":" << bound << "/api" << std::endl;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      server.stop();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "zsc: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
