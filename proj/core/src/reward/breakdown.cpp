#include "clamber/reward/breakdown.hpp"

#include <cmath>
#include <stdexcept>

namespace clamber::reward {

void RewardBreakdown::add(const std::string& name, double raw, double weight) {
  const double weighted = raw * weight;
  entries.push_back({name, raw, weighted});
  total += weighted;
}

double RewardBreakdown::raw_of(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e.raw;
  throw std::out_of_range("no breakdown entry: " + name);
}

double RewardBreakdown::weighted_of(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e.weighted;
  throw std::out_of_range("no breakdown entry: " + name);
}

namespace {

void add_regularization(RewardBreakdown& b, const RegularizationValues& reg,
                        const RewardWeights& w) {
  b.add("joint_limits", reg.joint_limits, w.get("joint_limits"));
  if (w.has("hip_deviation")) b.add("hip_deviation", reg.hip_deviation, w.get("hip_deviation"));
  b.add("joint_velocity", reg.joint_velocity, w.get("joint_velocity"));
  b.add("joint_accel", reg.joint_accel, w.get("joint_accel"));
  b.add("action_rate", reg.action_rate, w.get("action_rate"));
  b.add("torque", reg.torque, w.get("torque"));
  if (w.has("power")) b.add("power", reg.power, w.get("power"));
  if (w.has("body_slip")) b.add("body_slip", reg.body_slip, w.get("body_slip"));
  if (w.has("base_ang_vel")) b.add("base_ang_vel", reg.base_ang_vel, w.get("base_ang_vel"));
  if (w.has("base_accel")) b.add("base_accel", reg.base_accel, w.get("base_accel"));
  if (w.has("body_accel")) b.add("body_accel", reg.body_accel, w.get("body_accel"));
}

void add_task_terms(RewardBreakdown& b, const EpisodeContext& ctx, const TotalRewardInputs& in,
                    const RewardWeights& w) {
  switch (in.profile) {
    case TaskRewardProfile::kRatchet: {
      const auto vals = ratchet_term(*in.x, ctx.best, ctx.goal_reached_flag);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const std::string name = "ratchet_" + std::to_string(i);
        b.add(name, -vals[i], w.get(name));  // raw indicator: 1 on non-improving steps
      }
      break;
    }
    case TaskRewardProfile::kVelocity:
      b.add("baseline_velocity",
            baseline_task_reward(BaselineKind::kVelocity, in.baseline)[0],
            w.get("baseline_velocity"));
      break;
    case TaskRewardProfile::kRnd:
      b.add("baseline_sparse_success",
            baseline_task_reward(BaselineKind::kSparseSuccess, in.baseline)[0],
            w.get("baseline_sparse_success"));
      break;
    case TaskRewardProfile::kDistance:
    case TaskRewardProfile::kDistanceLessReg:
      b.add("baseline_distance",
            baseline_task_reward(BaselineKind::kDistance, in.baseline)[0],
            w.get("baseline_distance"));
      break;
    case TaskRewardProfile::kDirection:
      b.add("baseline_direction",
            baseline_task_reward(BaselineKind::kDirection, in.baseline)[0],
            w.get("baseline_direction"));
      break;
    case TaskRewardProfile::kIncrement: {
      const auto vals = baseline_task_reward(BaselineKind::kIncrement, in.baseline);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const std::string name = "baseline_increment_" + std::to_string(i);
        b.add(name, vals[i], w.get(name));
      }
      break;
    }
  }
}

}  // namespace

RewardBreakdown total_reward(const EpisodeContext& ctx, const TotalRewardInputs& in,
                             const RewardWeights& weights) {
  RewardBreakdown b;
  const auto st = survival_and_termination(ctx.terminated, ctx.timeout);

  if (task::is_maneuver(in.skill)) {
    b.add("survival", st.alive, weights.get("survival"));
    b.add("termination", st.termination, weights.get("termination"));
    b.add("force_penalty", -force_penalty(in.max_contact_force, in.force_limit, in.force_alpha),
          weights.get("force_penalty"));
    b.add("head_safety", -head_safety(in.head_contact_force), weights.get("head_safety"));
    add_regularization(b, regularization_suite(in.reg), weights);
    add_task_terms(b, ctx, in, weights);
    const double tp =
        terminal_posture(in.reg.state->q, *in.q_terminal_target, ctx.t, ctx.episode_len,
                         ctx.goal_reached_flag, 0.1, ctx.one_second_steps,
                         in.terminal_posture_squared);
    b.add("terminal_posture", tp, weights.get("terminal_posture"));
    return b;
  }

  // periodic locomotion sum
  const auto& s = *in.reg.state;
  const auto& model = *in.reg.model;
  const bool walk = in.skill == task::SkillId::kWalk;
  const auto loco = locomotion_rewards(in.loco);

  b.add("survival", st.alive, weights.get("survival"));
  if (weights.has("termination")) b.add("termination", st.termination, weights.get("termination"));
  b.add("track_lin_vel", loco.track_lin_vel, weights.get("track_lin_vel"));
  b.add("vertical_vel", loco.vertical_vel, weights.get("vertical_vel"));
  b.add("pitch_vel", s.pitch_rate * s.pitch_rate, weights.get("pitch_vel"));
  b.add("height_penalty", loco.height_penalty, weights.get("height_penalty"));
  const auto reg = regularization_suite(in.reg);
  b.add("joint_limits", reg.joint_limits, weights.get("joint_limits"));
  b.add("joint_velocity", reg.joint_velocity, weights.get("joint_velocity"));
  b.add("joint_accel", reg.joint_accel, weights.get("joint_accel"));
  b.add("action_rate", reg.action_rate, weights.get("action_rate"));
  b.add("torque", reg.torque, weights.get("torque"));

  double undesired = 0.0;
  double slip = 0.0;
  double linear_force = 0.0;
  if (in.reg.contacts) {
    for (const auto& c : *in.reg.contacts) {
      const double f = c.force_magnitude();
      const bool foot = c.body_part == sim::BodyPart::kFootL ||
                        c.body_part == sim::BodyPart::kFootR;
      const bool undesired_part = walk ? !foot : c.body_part == sim::BodyPart::kHead;
      if (undesired_part && f > 0.1) undesired += 1.0;
      if (foot && f > 1.0) slip += c.velocity.squaredNorm();
      if (f > 500.0) linear_force += f - 500.0;
    }
  }
  b.add("undesired_contact", undesired, weights.get("undesired_contact"));

  if (walk) {
    const double g_xy = std::sin(s.pitch);
    b.add("base_orientation", g_xy * g_xy, weights.get("base_orientation"));
    double hip_dev = 0.0;
    for (int j : {sim::kHipL, sim::kHipR}) {
      const double d = s.q[j] - model.q_stand[j];
      hip_dev += d * d;
    }
    b.add("hip_posture", hip_dev, weights.get("hip_posture"));
    b.add("contact_slip", slip, weights.get("contact_slip"));
    b.add("feet_swing_height", loco.feet_swing_height, weights.get("feet_swing_height"));
    b.add("gait_phase", loco.gait_phase, weights.get("gait_phase"));
    b.add("feet_air_time", loco.feet_air_time, weights.get("feet_air_time"));
  } else {
    double lying = 0.0;
    for (int j = 0; j < sim::kNumJoints; ++j) {
      const double d = s.q[j] - model.q_prone[j];
      lying += d * d;
    }
    b.add("lying_deviation", lying, weights.get("lying_deviation"));
    b.add("contact_force_linear", linear_force, weights.get("contact_force_linear"));
  }
  return b;
}

std::vector<std::string> breakdown_columns(task::SkillId skill, TaskRewardProfile profile) {
  std::vector<std::string> cols;
  if (task::is_maneuver(skill)) {
    cols = {"survival",     "termination",  "force_penalty", "head_safety",
            "joint_limits", "hip_deviation", "joint_velocity", "joint_accel",
            "action_rate",  "torque",        "power",          "body_slip",
            "base_ang_vel", "base_accel",    "body_accel"};
    switch (profile) {
      case TaskRewardProfile::kRatchet:
        cols.push_back("ratchet_0");
        cols.push_back("ratchet_1");
        break;
      case TaskRewardProfile::kVelocity: cols.push_back("baseline_velocity"); break;
      case TaskRewardProfile::kRnd: cols.push_back("baseline_sparse_success"); break;
      case TaskRewardProfile::kDistance:
      case TaskRewardProfile::kDistanceLessReg: cols.push_back("baseline_distance"); break;
      case TaskRewardProfile::kDirection: cols.push_back("baseline_direction"); break;
      case TaskRewardProfile::kIncrement:
        cols.push_back("baseline_increment_0");
        cols.push_back("baseline_increment_1");
        break;
    }
    cols.push_back("terminal_posture");
    return cols;
  }
  const bool walk = skill == task::SkillId::kWalk;
  cols = {"survival"};
  if (!walk) cols.push_back("termination");
  for (const char* c : {"track_lin_vel", "vertical_vel", "pitch_vel", "height_penalty",
                        "joint_limits", "joint_velocity", "joint_accel", "action_rate",
                        "torque", "undesired_contact"})
    cols.push_back(c);
  if (walk) {
    for (const char* c : {"base_orientation", "hip_posture", "contact_slip",
                          "feet_swing_height", "gait_phase", "feet_air_time"})
      cols.push_back(c);
  } else {
    cols.push_back("lying_deviation");
    cols.push_back("contact_force_linear");
  }
  return cols;
}

}  // namespace clamber::reward
