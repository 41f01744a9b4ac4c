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

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zsc/curriculum/trainer.hpp"
#include "zsc/service/config.hpp"
#include "zsc/service/layout_io.hpp"

namespace zsc::service {

// Loads the layout directory or runs the generator. A stalled generator is
// an error.
LayoutList resolve_layouts(const RunConfig& config);

curriculum::TrainerConfig trainer_config(const RunConfig& config);

json episode_json(const curriculum::EpisodeRecord& r);
json population_json(const curriculum::CurriculumTrainer& trainer);

struct TrainSummary {
  std::string out_dir;
  int iterations = 0;
  int ppo_updates = 0;
  int replay_episodes = 0;
  std::vector<std::string> warnings;
};

// Trains into config.out_dir, which must be absent or empty:
//   config.json, layouts/, checkpoints/iter_<i>.ckpt, population.json,
//   metrics.jsonl (one record per episode).
// Progress lines go to `log` when given.
TrainSummary train_run(const RunConfig& config, std::ostream* log = nullptr);

}  // namespace zsc::service
