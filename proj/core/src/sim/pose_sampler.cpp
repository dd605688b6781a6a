#include "clamber/sim/pose_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clamber/sim/kinematics.hpp"

namespace clamber::sim {

namespace {

constexpr double kPronePitch = -1.45;  // torso nearly horizontal, facing +x
constexpr double kSettleClearance = 0.005;

bool starts_standing(task::SkillId skill) {
  using task::SkillId;
  return skill == SkillId::kWalk || skill == SkillId::kClimbUp || skill == SkillId::kLieDown;
}

/// Drop the pelvis so the lowest contact part rests on the terrain.
void settle_height(RobotState& s, const Terrain& terrain, const RobotModel& model) {
  s.z = 0.0;
  const FkCache fk = forward_kinematics(s, model);
  double lift = -1e9;
  for (int p = 0; p < kNumBodyParts; ++p) {
    const Vec2& pos = fk.parts[p].pos;
    lift = std::max(lift, terrain_height(terrain, pos.x()) - pos.y());
  }
  s.z = lift + kSettleClearance;
}

}  // namespace

RobotState nominal_pose(task::SkillId skill, const Terrain& terrain, const RobotModel& model,
                        double base_x) {
  RobotState s;
  s.x = base_x;
  if (starts_standing(skill)) {
    s.pitch = 0.0;
    s.q = model.q_stand;
  } else {
    s.pitch = kPronePitch;
    s.q = model.q_prone;
  }
  settle_height(s, terrain, model);
  return s;
}

RobotState initial_pose_sample(task::SkillId skill, const Terrain& terrain,
                               const RobotModel& model, Rng& rng, const PoseSampleConfig& cfg) {
  using task::SkillId;
  double base_x = 0.0;
  switch (skill) {
    case SkillId::kClimbUp:
      base_x = terrain.edge_x - rng.uniform(cfg.climb_up_dist_min, cfg.climb_up_dist_max);
      break;
    case SkillId::kClimbDown:
      // prone on the platform top, feet toward the edge, descending -x
      base_x = terrain.edge_x + rng.uniform(cfg.climb_down_dist_min, cfg.climb_down_dist_max);
      break;
    case SkillId::kStandUp:
    case SkillId::kLieDown:
    case SkillId::kWalk:
    case SkillId::kCrawl:
      base_x = rng.uniform(cfg.locomotion_x_min, cfg.locomotion_x_max);
      break;
    default:
      throw std::invalid_argument("initial_pose_sample: unknown skill");
  }

  RobotState s = nominal_pose(skill, terrain, model, base_x);
  for (int j = 0; j < kNumJoints; ++j) {
    const double dq = rng.uniform(-cfg.joint_perturbation, cfg.joint_perturbation);
    s.q[j] = std::clamp(s.q[j] + dq, model.joint_min[j], model.joint_max[j]);
  }
  s.pitch += rng.uniform(-cfg.pitch_perturbation, cfg.pitch_perturbation);
  settle_height(s, terrain, model);
  return s;
}

}  // namespace clamber::sim
