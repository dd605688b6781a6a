#pragma once

#include <deque>
#include <memory>
#include <optional>

#include "clamber/common/rng.hpp"
#include "clamber/learn/layout.hpp"
#include "clamber/percep/artifacts.hpp"
#include "clamber/percep/restore.hpp"
#include "clamber/reward/breakdown.hpp"
#include "clamber/sim/physics.hpp"
#include "clamber/sim/pose_sampler.hpp"
#include "clamber/task/task_state.hpp"

namespace clamber::env {

enum class TerrainKind { kAuto, kFlat, kPlatform };

struct EnvConfig {
  task::SkillId skill = task::SkillId::kClimbUp;
  reward::TaskRewardProfile profile = reward::TaskRewardProfile::kRatchet;
  int episode_len = 350;  // 1000 for locomotion
  TerrainKind terrain = TerrainKind::kAuto;  // auto: platform for climb skills
  double platform_height_min = 0.55;
  double platform_height_max = 0.85;
  double platform_edge_x = 1.0;
  double action_scale = 0.5;  // PD target = nominal + scale * action

  bool domain_randomization = true;
  bool observation_noise = true;
  bool map_artifacts = true;
  bool pushes = true;
  double push_vx = 0.5, push_vz = 0.2, push_pitch_rate = 0.5;
  double push_interval_min = 1.0, push_interval_max = 3.0;  // s
  double friction_static_min = 0.3, friction_static_max = 1.6;
  double friction_dynamic_min = 0.3, friction_dynamic_max = 1.2;
  double torso_mass_delta = 1.0;       // kg
  double joint_default_delta = 0.01;   // rad

  double v_cmd_min = 0.5, v_cmd_max = 1.0;  // world frame (velocity baseline & walk)
  double gait_period = 0.8;                 // s
  double goal_inside_platform = 0.5;        // m past the edge (distance baseline)
  double balance_threshold = 0.05;          // m

  sim::SimConfig sim;
  sim::PoseSampleConfig pose;
  percep::ArtifactConfig artifacts;
};

struct EnvStepResult {
  double reward = 0.0;
  bool done = false;
  bool timeout = false;
  reward::RewardBreakdown breakdown;
};

/// Single-threaded planar environment instance: owns its state, RNG stream,
/// terrain draw, episode context and observation history. Many instances
/// run in parallel with independent streams.
class PlanarEnv {
 public:
  PlanarEnv(const EnvConfig& cfg, const sim::RobotModel& model, std::uint64_t seed,
            std::uint64_t stream);

  void reset();
  EnvStepResult step(const sim::JointVec& action);

  /// Retarget the episode to another skill without disturbing the physics
  /// state or observation history (distillation skill hand-offs). Task
  /// bookkeeping (goal, best-so-far, reward table) restarts for the new
  /// skill.
  void switch_skill(task::SkillId skill);

  const learn::ObservationLayout& layout() const { return layout_; }
  Eigen::VectorXf actor_observation() const;
  Eigen::VectorXf critic_observation() const;

  /// Observation in an arbitrary (e.g. unified student) layout; slices the
  /// current skill lacks are zero-filled.
  Eigen::VectorXf observation_for(const learn::ObservationLayout& layout, double trigger_stand,
                                  double trigger_lie) const;

  // episode bookkeeping
  bool success_latched() const { return ctx_.goal_reached_flag; }
  double episode_peak_force() const { return episode_peak_force_; }
  int episode_step() const { return ctx_.t; }
  const sim::RobotState& state() const { return state_; }
  const sim::Terrain& terrain() const { return terrain_; }
  const task::GoalSpec& goal() const { return goal_; }
  const reward::EpisodeContext& context() const { return ctx_; }
  const sim::RobotModel& model() const { return model_; }
  double v_cmd() const { return v_cmd_; }
  double phase() const { return phase_; }
  const EnvConfig& config() const { return cfg_; }

  /// PD targets actually sent for a policy action (nominal + scale * a).
  sim::JointVec action_to_targets(const sim::JointVec& action) const;

 private:
  void sample_terrain();
  void refresh_map();
  void push_history();
  bool failure_terminated() const;
  double terrain_under_base() const;

  EnvConfig cfg_;
  sim::RobotModel base_model_;  // before domain randomization
  sim::RobotModel model_;
  sim::SimConfig sim_cfg_;
  learn::ObservationLayout layout_;
  learn::ObservationNoise noise_;
  Rng rng_;

  sim::Terrain terrain_;
  task::GoalSpec goal_;
  sim::RobotState state_;
  sim::RobotState prev_state_;
  reward::EpisodeContext ctx_;
  task::TaskState task_state_;
  sim::JointVec prev_action_{};
  sim::JointVec prev_prev_action_{};
  sim::JointVec nominal_q_{};
  std::deque<Eigen::Matrix<float, learn::kProprioDim, 1>> proprio_history_;
  std::deque<sim::JointVec> action_history_;
  percep::ElevationMap map_;
  reward::RewardWeights weights_;
  double stand_pelvis_z_ = 0.95;
  std::array<sim::Vec2, sim::kNumBodyParts> part_vel_{};
  std::array<double, 2> feet_air_time_{};
  double episode_peak_force_ = 0.0;
  double v_cmd_ = 0.0;
  double phase_ = 0.0;
  double next_push_time_ = 0.0;
  int steps_since_map_ = 0;
};

}  // namespace clamber::env
