#pragma once

#include "clamber/common/rng.hpp"
#include "clamber/sim/model.hpp"
#include "clamber/sim/state.hpp"
#include "clamber/sim/terrain.hpp"
#include "clamber/task/skill.hpp"

namespace clamber::sim {

struct PoseSampleConfig {
  double joint_perturbation = 0.15;  // rad, uniform, clamped to limits
  double climb_up_dist_min = 0.15;   // m, base-to-wall distance
  double climb_up_dist_max = 0.35;
  double climb_down_dist_min = 0.30;
  double climb_down_dist_max = 0.45;
  double pitch_perturbation = 0.05;  // rad
  double locomotion_x_min = 0.0;  // base placement for walk/crawl/stand-up/lie-down
  double locomotion_x_max = 0.0;
};

/// Initial state for a skill episode: the skill's nominal posture (stand or
/// prone) with uniform joint perturbations, base placed per skill relative
/// to the platform edge, pelvis height settled so the support points rest
/// on the terrain.
RobotState initial_pose_sample(task::SkillId skill, const Terrain& terrain,
                               const RobotModel& model, Rng& rng,
                               const PoseSampleConfig& cfg = {});

/// Deterministic nominal pose (zero perturbation), used by tests and as the
/// basis for task-threshold derivation.
RobotState nominal_pose(task::SkillId skill, const Terrain& terrain, const RobotModel& model,
                        double base_x);

}  // namespace clamber::sim
