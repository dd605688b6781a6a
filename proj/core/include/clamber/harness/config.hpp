#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clamber/distill/distill.hpp"
#include "clamber/env/environment.hpp"
#include "clamber/learn/trainer.hpp"

namespace clamber::harness {

/// One experiment: a skill (or distillation mix), exactly one task-reward
/// profile, terrain/randomization ranges, learner overrides, seed and
/// output directory. Parsed from a versioned JSON file.
struct ExperimentConfig {
  int version = 1;
  task::SkillId skill = task::SkillId::kClimbUp;
  reward::TaskRewardProfile profile = reward::TaskRewardProfile::kRatchet;
  env::EnvConfig env;
  learn::TrainConfig train;
  distill::DistillConfig distill;
  std::uint64_t seed = 0;
  int trials = 200;
  std::string out_dir = "out";
  bool unsafe_ranges = false;  // permit out-of-range randomization values

  /// Throws std::invalid_argument listing every validation failure.
  void validate() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);
void save_config(const ExperimentConfig& cfg, const std::string& path);

}  // namespace clamber::harness
