#include "clamber/env/environment.hpp"

#include <algorithm>
#include <cmath>

#include "clamber/reward/weights.hpp"

namespace clamber::env {

using task::SkillId;

namespace {

constexpr int kMapRefreshSteps = 1;

}  // namespace

PlanarEnv::PlanarEnv(const EnvConfig& cfg, const sim::RobotModel& model, std::uint64_t seed,
                     std::uint64_t stream)
    : cfg_(cfg),
      base_model_(model),
      model_(model),
      sim_cfg_(cfg.sim),
      layout_(learn::ObservationLayout::for_skill(cfg.skill)),
      rng_(seed, stream) {
  noise_.enabled = cfg.observation_noise;
  reset();
}

void PlanarEnv::sample_terrain() {
  const bool platform = cfg_.terrain == TerrainKind::kPlatform ||
                        (cfg_.terrain == TerrainKind::kAuto &&
                         task::uses_elevation_map(cfg_.skill));
  if (platform) {
    const double h = rng_.uniform(cfg_.platform_height_min, cfg_.platform_height_max);
    terrain_ = sim::platform_terrain(cfg_.platform_edge_x, h);
  } else {
    terrain_ = sim::flat_terrain();
  }
}

double PlanarEnv::terrain_under_base() const {
  return sim::terrain_height(terrain_, state_.x);
}

void PlanarEnv::reset() {
  sample_terrain();

  // domain randomization: torso mass, joint nominals, contact friction
  model_ = base_model_;
  sim_cfg_ = cfg_.sim;
  nominal_q_ = task::is_maneuver(cfg_.skill)
                   ? (cfg_.skill == SkillId::kClimbUp || cfg_.skill == SkillId::kLieDown
                          ? model_.q_stand
                          : model_.q_prone)
                   : (cfg_.skill == SkillId::kWalk ? model_.q_stand : model_.q_prone);
  if (cfg_.domain_randomization) {
    model_.link_masses[sim::kTorso] +=
        rng_.uniform(-cfg_.torso_mass_delta, cfg_.torso_mass_delta);
    model_.link_masses[sim::kTorso] = std::max(model_.link_masses[sim::kTorso], 1.0);
    for (int j = 0; j < sim::kNumJoints; ++j)
      nominal_q_[j] = std::clamp(
          nominal_q_[j] + rng_.uniform(-cfg_.joint_default_delta, cfg_.joint_default_delta),
          model_.joint_min[j], model_.joint_max[j]);
    sim_cfg_.friction_static =
        rng_.uniform(cfg_.friction_static_min, cfg_.friction_static_max);
    sim_cfg_.friction_dynamic = rng_.uniform(
        cfg_.friction_dynamic_min, std::min(cfg_.friction_dynamic_max, sim_cfg_.friction_static));
  }

  state_ = sim::initial_pose_sample(cfg_.skill, terrain_, model_, rng_, cfg_.pose);
  prev_state_ = state_;

  ctx_ = reward::EpisodeContext{};
  ctx_.episode_len = cfg_.episode_len;
  ctx_.one_second_steps = static_cast<int>(std::lround(1.0 / sim_cfg_.control_dt));

  if (task::is_maneuver(cfg_.skill)) {
    goal_ = task::derive_goal_spec(cfg_.skill, terrain_, model_, cfg_.balance_threshold);
    task_state_ = task::extract_task_state(cfg_.skill, state_, terrain_, model_);
    ctx_.best = task::BestSoFar::init(task_state_);
    ctx_.prev_task_state = task_state_;
    v_cmd_ = rng_.uniform(cfg_.v_cmd_min, cfg_.v_cmd_max);
  } else {
    goal_ = task::GoalSpec{};
    goal_.skill = cfg_.skill;
    task_state_ = task::TaskState{};
    task_state_.skill = cfg_.skill;
    ctx_.best = task::BestSoFar{};
    ctx_.best.skill = cfg_.skill;
    v_cmd_ = cfg_.skill == SkillId::kWalk ? rng_.uniform(0.2, 1.0) : rng_.uniform(0.1, 0.5);
  }

  weights_ = task::is_maneuver(cfg_.skill) ? reward::maneuver_weights(cfg_.profile)
                                           : reward::locomotion_weights(cfg_.skill);
  stand_pelvis_z_ =
      sim::nominal_pose(SkillId::kWalk, sim::flat_terrain(), model_, 0.0).z;

  prev_action_ = sim::JointVec{};
  prev_prev_action_ = sim::JointVec{};
  phase_ = rng_.uniform(0.0, 1.0);
  feet_air_time_ = {0.0, 0.0};
  episode_peak_force_ = 0.0;
  next_push_time_ = rng_.uniform(cfg_.push_interval_min, cfg_.push_interval_max);
  state_.time = 0.0;
  steps_since_map_ = 0;
  refresh_map();

  const sim::FkCache fk = sim::forward_kinematics(state_, model_);
  for (int p = 0; p < sim::kNumBodyParts; ++p) part_vel_[p] = fk.parts[p].vel;

  proprio_history_.clear();
  action_history_.clear();
  const auto snap = learn::proprio_snapshot(state_, noise_, rng_);
  for (int h = 0; h < learn::kHistoryLen; ++h) {
    proprio_history_.push_back(snap);
    action_history_.push_back(sim::JointVec{});
  }
}

void PlanarEnv::refresh_map() {
  // maintained whenever any consumer may want it (the unified student
  // observes the map even while the active skill is a locomotion one)
  if (layout_.map_dim == 0 && cfg_.terrain != TerrainKind::kPlatform) return;
  const percep::ElevationMap clean = percep::sample_elevation(terrain_, state_.x);
  map_ = cfg_.map_artifacts ? percep::inject_artifacts(clean, terrain_, cfg_.artifacts, rng_)
                            : clean;
}

sim::JointVec PlanarEnv::action_to_targets(const sim::JointVec& action) const {
  sim::JointVec t;
  for (int j = 0; j < sim::kNumJoints; ++j)
    t[j] = std::clamp(nominal_q_[j] + cfg_.action_scale * action[j], model_.joint_min[j],
                      model_.joint_max[j]);
  return t;
}

bool PlanarEnv::failure_terminated() const {
  if (state_.z < terrain_.min_height() - 0.5) return true;
  const double pitch = state_.pitch;
  switch (cfg_.skill) {
    case SkillId::kWalk: {
      const double pelvis_above = state_.z - terrain_under_base();
      return std::abs(pitch) > 1.2 || pelvis_above < 0.5 * stand_pelvis_z_;
    }
    case SkillId::kCrawl:
      return std::abs(pitch + 1.45) > 1.1;
    default:
      return std::abs(pitch) > 2.8;
  }
}

EnvStepResult PlanarEnv::step(const sim::JointVec& action) {
  prev_state_ = state_;
  const auto prev_part_vel = part_vel_;
  const auto prev_feet_air = feet_air_time_;

  if (cfg_.pushes && state_.time >= next_push_time_) {
    state_ = sim::apply_push(state_, rng_.uniform(-cfg_.push_vx, cfg_.push_vx),
                             rng_.uniform(-cfg_.push_vz, cfg_.push_vz),
                             rng_.uniform(-cfg_.push_pitch_rate, cfg_.push_pitch_rate));
    next_push_time_ =
        state_.time + rng_.uniform(cfg_.push_interval_min, cfg_.push_interval_max);
  }

  bool diverged = false;
  sim::StepResult sr;
  try {
    sr = sim::step(state_, action_to_targets(action), terrain_, model_, sim_cfg_);
    state_ = sr.state;
  } catch (const sim::SimDiverged&) {
    diverged = true;
  }
  ctx_.t += 1;

  const sim::FkCache fk = sim::forward_kinematics(state_, model_);
  for (int p = 0; p < sim::kNumBodyParts; ++p) part_vel_[p] = fk.parts[p].vel;

  double max_force = 0.0, head_force = 0.0, peak = 0.0;
  std::array<bool, 2> feet_contact{false, false};
  for (const auto& c : sr.contacts) {
    const double f = c.force_magnitude();
    peak = std::max(peak, f);
    if (c.body_part == sim::BodyPart::kHead)
      head_force = std::max(head_force, f);
    else
      max_force = std::max(max_force, f);
    if (c.body_part == sim::BodyPart::kFootL) feet_contact[0] = true;
    if (c.body_part == sim::BodyPart::kFootR) feet_contact[1] = true;
  }
  episode_peak_force_ = std::max(episode_peak_force_, peak);

  std::array<bool, 2> touchdown{false, false};
  for (int f = 0; f < 2; ++f) {
    if (feet_contact[f]) {
      touchdown[f] = prev_feet_air[f] > 0.0;
      feet_air_time_[f] = 0.0;
    } else {
      feet_air_time_[f] += sim_cfg_.control_dt;
    }
  }

  // task bookkeeping: goal gating uses the current task state
  if (task::is_maneuver(cfg_.skill)) {
    task_state_ = task::extract_task_state(cfg_.skill, state_, terrain_, model_);
    if (task::goal_reached(cfg_.skill, task_state_, goal_)) ctx_.goal_reached_flag = true;
  }

  const bool failed = diverged || failure_terminated();
  const bool timeout = !failed && ctx_.t >= cfg_.episode_len;
  ctx_.terminated = failed;
  ctx_.timeout = timeout;

  // reward assembly
  reward::TotalRewardInputs in;
  in.skill = cfg_.skill;
  in.profile = cfg_.profile;
  in.x = &task_state_;
  in.max_contact_force = max_force;
  in.head_contact_force = head_force;
  in.reg.state = &state_;
  in.reg.prev_state = &prev_state_;
  in.reg.action = action;
  in.reg.prev_action = prev_action_;
  in.reg.torques = sr.applied_torques;
  in.reg.contacts = &sr.contacts;
  in.reg.model = &model_;
  in.reg.dt = sim_cfg_.control_dt;
  in.reg.part_vel = part_vel_;
  in.reg.prev_part_vel = prev_part_vel;

  const sim::JointVec& q_tar =
      (cfg_.skill == SkillId::kClimbUp || cfg_.skill == SkillId::kLieDown) ? model_.q_prone
                                                                           : model_.q_stand;
  in.q_terminal_target = &q_tar;

  in.baseline.base_vx = state_.vx;
  in.baseline.base_vz = state_.vz;
  in.baseline.v_cmd = v_cmd_;
  in.baseline.base_x = state_.x;
  in.baseline.base_z = state_.z;
  in.baseline.goal_x = terrain_.edge_x + cfg_.goal_inside_platform;
  in.baseline.goal_z = terrain_.edge_height;
  in.baseline.goal_reached = ctx_.goal_reached_flag;
  in.baseline.x = &task_state_;
  in.baseline.prev_x = &ctx_.prev_task_state;

  in.loco.state = &state_;
  in.loco.v_cmd = v_cmd_;
  in.loco.phase = phase_;
  in.loco.contacts = &sr.contacts;
  in.loco.feet_air_time = prev_feet_air;
  in.loco.feet_contact = feet_contact;
  in.loco.feet_touchdown = touchdown;
  in.loco.feet_height = {
      fk.points.foot_l.y() - sim::terrain_height(terrain_, fk.points.foot_l.x()),
      fk.points.foot_r.y() - sim::terrain_height(terrain_, fk.points.foot_r.x())};
  in.loco.base_height_above_terrain = state_.z - terrain_under_base();
  in.loco.desired_base_height = stand_pelvis_z_;

  EnvStepResult out;
  out.breakdown = reward::total_reward(ctx_, in, weights_);
  out.reward = out.breakdown.total;
  out.done = failed || timeout;
  out.timeout = timeout;

  // roll episode state forward
  if (task::is_maneuver(cfg_.skill)) {
    ctx_.best = task::update_best(ctx_.best, task_state_);
    ctx_.prev_task_state = task_state_;
  }
  prev_prev_action_ = prev_action_;
  prev_action_ = action;
  phase_ += sim_cfg_.control_dt / cfg_.gait_period;
  phase_ -= std::floor(phase_);

  if (++steps_since_map_ >= kMapRefreshSteps) {
    steps_since_map_ = 0;
    refresh_map();
  }
  push_history();
  return out;
}

void PlanarEnv::push_history() {
  proprio_history_.push_back(learn::proprio_snapshot(state_, noise_, rng_));
  proprio_history_.pop_front();
  action_history_.push_back(prev_action_);
  action_history_.pop_front();
}

void PlanarEnv::switch_skill(task::SkillId skill) {
  cfg_.skill = skill;
  layout_ = learn::ObservationLayout::for_skill(skill);
  nominal_q_ = (skill == SkillId::kClimbUp || skill == SkillId::kLieDown ||
                skill == SkillId::kWalk)
                   ? model_.q_stand
                   : model_.q_prone;
  weights_ = task::is_maneuver(skill) ? reward::maneuver_weights(cfg_.profile)
                                      : reward::locomotion_weights(skill);
  ctx_.goal_reached_flag = false;
  if (task::is_maneuver(skill)) {
    goal_ = task::derive_goal_spec(skill, terrain_, model_, cfg_.balance_threshold);
    task_state_ = task::extract_task_state(skill, state_, terrain_, model_);
    ctx_.best = task::BestSoFar::init(task_state_);
    ctx_.prev_task_state = task_state_;
  } else {
    goal_ = task::GoalSpec{};
    goal_.skill = skill;
    task_state_ = task::TaskState{};
    task_state_.skill = skill;
    ctx_.best = task::BestSoFar{};
    ctx_.best.skill = skill;
  }
  steps_since_map_ = 0;
  refresh_map();
}

Eigen::VectorXf PlanarEnv::observation_for(const learn::ObservationLayout& layout,
                                           double trigger_stand, double trigger_lie) const {
  learn::ObservationInputs in;
  in.proprio_history = &proprio_history_;
  in.action_history = &action_history_;
  in.task_state = (task::is_maneuver(cfg_.skill) && layout.task_state_dim > 0 &&
                   static_cast<int>(task_state_.size()) == layout.task_state_dim)
                      ? &task_state_
                      : nullptr;
  in.map = (layout.map_dim > 0 &&
            (layout_.map_dim > 0 || cfg_.terrain == TerrainKind::kPlatform))
               ? &map_
               : nullptr;
  in.phase = phase_;
  in.v_cmd = v_cmd_;
  in.base_z = state_.z;
  in.trigger_stand = trigger_stand;
  in.trigger_lie = trigger_lie;
  return learn::build_observation(layout, in);
}

Eigen::VectorXf PlanarEnv::actor_observation() const {
  learn::ObservationInputs in;
  in.proprio_history = &proprio_history_;
  in.action_history = &action_history_;
  in.task_state = task::is_maneuver(cfg_.skill) ? &task_state_ : nullptr;
  in.map = layout_.map_dim > 0 ? &map_ : nullptr;
  in.phase = phase_;
  in.v_cmd = v_cmd_;
  in.base_z = state_.z;
  return learn::build_observation(layout_, in);
}

Eigen::VectorXf PlanarEnv::critic_observation() const {
  return learn::build_critic_observation(layout_, actor_observation(), ctx_.best);
}

}  // namespace clamber::env
