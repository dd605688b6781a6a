#include "clamber/reward/terms.hpp"

#include <cmath>
#include <stdexcept>

namespace clamber::reward {

std::vector<double> ratchet_term(const task::TaskState& x, const task::BestSoFar& best,
                                 bool goal_reached_flag) {
  if (best.skill != x.skill || best.values.size() != x.components.size())
    throw std::invalid_argument("ratchet_term: component mismatch");
  std::vector<double> out(x.components.size(), 0.0);
  if (goal_reached_flag) return out;
  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& c = x.components[i];
    const bool surpassed = (c.direction == task::Direction::kIncrease)
                               ? (c.value > best.values[i])
                               : (c.value < best.values[i]);
    out[i] = surpassed ? 0.0 : -1.0;
  }
  return out;
}

double force_penalty(double f_max, double f_limit, double alpha) {
  const double excess = f_max - f_limit;
  return -(std::exp(alpha * (excess > 0.0 ? excess : 0.0)) - 1.0);
}

double head_safety(double f_head, double alpha) { return force_penalty(f_head, 0.0, alpha); }

double terminal_posture(const sim::JointVec& q, const sim::JointVec& q_target, int t,
                        int episode_len, bool goal_reached_flag, double beta,
                        int one_second_steps, bool squared) {
  if (!goal_reached_flag) return 0.0;
  if (t <= episode_len - one_second_steps) return 0.0;
  double sq = 0.0;
  for (int j = 0; j < sim::kNumJoints; ++j) {
    const double d = q[j] - q_target[j];
    sq += d * d;
  }
  return std::exp(-beta * (squared ? sq : std::sqrt(sq)));
}

SurvivalTermination survival_and_termination(bool terminated, bool timeout) {
  SurvivalTermination st;
  st.alive = terminated ? 0.0 : 1.0;
  st.termination = (terminated && !timeout) ? 1.0 : 0.0;
  return st;
}

RegularizationValues regularization_suite(const RegularizationInputs& in) {
  RegularizationValues v;
  const auto& s = *in.state;
  const auto& m = *in.model;
  const double dt = in.dt;

  for (int j = 0; j < sim::kNumJoints; ++j) {
    const double lo = m.soft_min(j), hi = m.soft_max(j);
    if (s.q[j] > hi) v.joint_limits += s.q[j] - hi;
    if (s.q[j] < lo) v.joint_limits += lo - s.q[j];
    v.joint_velocity += s.qd[j] * s.qd[j];
    const double qdd = (s.qd[j] - in.prev_state->qd[j]) / dt;
    v.joint_accel += qdd * qdd;
    const double da = in.action[j] - in.prev_action[j];
    v.action_rate += da * da;
    v.torque += in.torques[j] * in.torques[j];
    v.power += std::abs(in.torques[j] * s.qd[j]);
  }
  if (std::abs(s.q[sim::kHipL]) > in.hip_deviation_bound ||
      std::abs(s.q[sim::kHipR]) > in.hip_deviation_bound)
    v.hip_deviation = 1.0;

  if (in.contacts) {
    for (const auto& c : *in.contacts) v.body_slip += std::abs(c.velocity.x());
  }

  v.base_ang_vel = s.pitch_rate * s.pitch_rate;
  const double ax = (s.vx - in.prev_state->vx) / dt;
  const double az = (s.vz - in.prev_state->vz) / dt;
  const double apitch = (s.pitch_rate - in.prev_state->pitch_rate) / dt;
  v.base_accel = ax * ax + az * az + 0.02 * apitch * apitch;

  for (int p = 0; p < sim::kNumBodyParts; ++p)
    v.body_accel += ((in.part_vel[p] - in.prev_part_vel[p]) / dt).norm();
  return v;
}

std::array<bool, 2> gait_target_contacts(double phase) {
  // alternating 50% duty cycle, left foot in stance during the first half
  return {phase < 0.5, phase >= 0.5};
}

LocomotionValues locomotion_rewards(const LocomotionInputs& in) {
  LocomotionValues v;
  const auto& s = *in.state;
  const double dv = s.vx - in.v_cmd;
  v.track_lin_vel = std::exp(-dv * dv / 0.25);
  v.vertical_vel = s.vz * s.vz;
  const double dh = in.base_height_above_terrain - in.desired_base_height;
  v.height_penalty = dh * dh;

  const auto target = gait_target_contacts(in.phase);
  const bool moving = std::abs(in.v_cmd) > 0.1;
  for (int f = 0; f < 2; ++f) {
    if (in.feet_contact[f] == target[f]) v.gait_phase += 1.0;
    if (in.feet_touchdown[f] && moving) v.feet_air_time += in.feet_air_time[f] - 0.5;
    if (!in.feet_contact[f]) {
      const double d = in.swing_height_target - in.feet_height[f];
      v.feet_swing_height += d * d;
    }
  }
  return v;
}

std::vector<double> baseline_task_reward(BaselineKind kind, const BaselineInputs& in) {
  switch (kind) {
    case BaselineKind::kVelocity: {
      const double dv = in.base_vx - in.v_cmd;
      return {std::exp(-dv * dv / 0.25)};
    }
    case BaselineKind::kSparseSuccess:
      return {in.goal_reached ? 1.0 : 0.0};
    case BaselineKind::kDistance: {
      const double d = in.base_x - in.goal_x;
      return {1.0 / (1.0 + d * d)};
    }
    case BaselineKind::kDirection: {
      const double speed = std::sqrt(in.base_vx * in.base_vx + in.base_vz * in.base_vz);
      if (speed < in.stall_speed) return {-1.0};  // stalling is penalized
      const double gx = in.goal_x - in.base_x;
      if (gx == 0.0) return {0.0};
      const double dir = gx > 0.0 ? 1.0 : -1.0;
      return {in.base_vx * dir / speed};
    }
    case BaselineKind::kIncrement: {
      if (!in.x || !in.prev_x || in.x->components.size() != in.prev_x->components.size())
        throw std::invalid_argument("increment baseline: task-state inputs missing");
      std::vector<double> out(in.x->components.size(), 0.0);
      if (in.goal_reached) return out;
      for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& c = in.x->components[i];
        const auto& p = in.prev_x->components[i];
        const bool improved = (c.direction == task::Direction::kIncrease) ? (c.value > p.value)
                                                                          : (c.value < p.value);
        out[i] = improved ? 1.0 : 0.0;
      }
      return out;
    }
  }
  throw std::invalid_argument("baseline_task_reward: unknown kind");
}

}  // namespace clamber::reward
