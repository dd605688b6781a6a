#pragma once

#include <string>
#include <vector>

#include "clamber/harness/config.hpp"

namespace clamber::harness {

/// Experiment commands behind the CLI. Each writes its artifacts under
/// cfg.out_dir and is byte-reproducible for a fixed (config, seed).

/// Train one skill: checkpoint + learning-curve CSV.
int cmd_train(const ExperimentConfig& cfg);

/// Train + evaluate climb-up under several task-reward profiles with paired
/// evaluation seeds; emits a comparison CSV (success rate, median/max
/// contact force per profile) and learning-curve overlay data.
int cmd_compare_baselines(const ExperimentConfig& cfg, const std::vector<std::string>& profiles);

/// Sample platform scenes, inject artifacts, restore; writes before/after
/// map files and an RMSE report CSV.
int cmd_perception_demo(const ExperimentConfig& cfg, int scenes = 100);

/// BC + DAgger distillation against trained teacher checkpoints; emits the
/// student checkpoint and a teacher/student comparison CSV.
int cmd_distill(const ExperimentConfig& cfg, const std::vector<std::string>& teacher_paths);

/// Evaluate a checkpoint over n trials; emits per-episode CSV.
int cmd_evaluate(const ExperimentConfig& cfg, const std::string& checkpoint_path);

/// Render CSV files to SVG plots (line for curves, bar for comparisons).
int cmd_plot(const std::vector<std::string>& csv_paths, const std::string& out_dir);

/// Trajectory CSV column list for a skill/profile (stable order).
std::vector<std::string> trajectory_columns(task::SkillId skill,
                                            reward::TaskRewardProfile profile);

}  // namespace clamber::harness
