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

#include "zsc/service/run.hpp"

#include <filesystem>
#include <fstream>

#include "zsc/common/error.hpp"
#include "zsc/layoutgen/generator.hpp"
#include "zsc/service/checkpoint.hpp"

namespace zsc::service {

namespace fs = std::filesystem;

LayoutList resolve_layouts(const RunConfig& config) {
  if (!config.layouts_dir.empty()) return load_layout_dir(config.layouts_dir);
  layoutgen::LayoutSet set = layoutgen::generate(config.generator);
  if (set.stalled) {
    throw Error("layout generator stalled after " + std::to_string(set.attempts) + " attempts with " +
                std::to_string(set.size()) + " of " + std::to_string(config.generator.count) + " layouts");
  }
  return std::move(set.layouts);
}

curriculum::TrainerConfig trainer_config(const RunConfig& config) {
  curriculum::TrainerConfig tc;
  tc.curriculum = config.curriculum;
  tc.ppo = config.ppo;
  tc.network = config.network;
  tc.cook_time = config.cook_time;
  tc.seed = config.seed;
  return tc;
}

json episode_json(const curriculum::EpisodeRecord& r) {
  json j;
  j["iter"] = r.iteration;
  j["episode"] = r.episode;
  j["global_episode"] = r.global_episode;
  j["co_player"] = r.co_player;
  j["layout_id"] = r.layout_id;
  j["branch"] = std::string(curriculum::branch_name(r.branch));
  j["S"] = r.score;
  j["total_reward"] = r.total_reward;
  j["updated"] = r.updated;
  j["ego_seat"] = r.ego_seat;
  j["buffer_size"] = r.buffer_size;
  return j;
}

json population_json(const curriculum::CurriculumTrainer& trainer) {
  json members = json::array();
  for (const auto& m : trainer.population().members()) {
    json buffer = json::array();
    for (const auto& e : m.buffer.entries()) {
      buffer.push_back(
          {{"layout_id", e.layout_id}, {"score", e.score}, {"last_sampled", e.last_sampled}, {"visits", e.visits}});
    }
    members.push_back({{"id", m.id},
                       {"created_at", m.created_at},
                       {"fingerprint", m.fingerprint},
                       {"checkpoint", "checkpoints/iter_" + std::to_string(m.created_at) + ".ckpt"},
                       {"buffer", buffer}});
  }
  return {{"capacity", trainer.population().capacity()},
          {"iterations", trainer.iterations_done()},
          {"ego_fingerprint", trainer.ego().fingerprint()},
          {"members", members}};
}

TrainSummary train_run(const RunConfig& config, std::ostream* log) {
  if (auto why = config.check(); !why.empty()) throw Error("run config: " + why);
  const fs::path out(config.out_dir);
  if (fs::exists(out) && !(fs::is_directory(out) && fs::is_empty(out))) {
    throw Error("output directory '" + config.out_dir + "' exists and is not empty");
  }
  // Everything that can fail on bad input happens before the directory is made.
  const LayoutList layouts = resolve_layouts(config);
  curriculum::CurriculumTrainer trainer(trainer_config(config), layouts);

  RunConfig resolved = config;
  resolved.network = trainer.config().network;
  const json config_json = to_json(resolved);
  // Where the run lands is not part of what was trained.
  json hashed = config_json;
  hashed.erase("out_dir");
  const std::string hash = config_hash(hashed);

  fs::create_directories(out / "checkpoints");
  {
    std::ofstream f(out / "config.json");
    f << config_json.dump(2) << '\n';
  }
  write_layout_dir((out / "layouts").string(), layouts);
  for (const auto& w : trainer.warnings()) {
    if (log) *log << "warning: " << w << '\n';
  }

  std::ofstream metrics(out / "metrics.jsonl");
  if (!metrics) throw Error("cannot write metrics in '" + config.out_dir + "'");
  trainer.run(
      [&](const curriculum::EpisodeRecord& r) { metrics << episode_json(r).dump() << '\n'; },
      [&](int iteration, const curriculum::CurriculumTrainer& t) {
        metrics.flush();
        const std::string name = "iter_" + std::to_string(iteration) + ".ckpt";
        save_checkpoint((out / "checkpoints" / name).string(), t.ego(),
                        {"iter_" + std::to_string(iteration), iteration, hash, ""});
        std::ofstream pop(out / "population.json");
        pop << population_json(t).dump(2) << '\n';
        if (log) {
          *log << "iteration " << iteration << "/" << config.curriculum.iterations << ": " << t.ppo_updates()
               << " PPO updates, population " << t.population().size() << '\n';
        }
      });

  TrainSummary s;
  s.out_dir = config.out_dir;
  s.iterations = trainer.iterations_done();
  s.ppo_updates = trainer.ppo_updates();
  s.replay_episodes = trainer.replay_episodes();
  s.warnings = trainer.warnings();
  return s;
}

}  // namespace zsc::service
