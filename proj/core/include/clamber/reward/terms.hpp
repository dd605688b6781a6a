#pragma once

#include <vector>

#include "clamber/sim/physics.hpp"
#include "clamber/task/task_state.hpp"

namespace clamber::reward {

/// Per-component ratchet progress value: 0 when x strictly surpasses its
/// best-so-far in the component's improvement direction, -1 otherwise.
/// Once the goal has been reached all components are forced to 0.
/// `best` must exclude the current step (updated through x_{t-1}).
std::vector<double> ratchet_term(const task::TaskState& x, const task::BestSoFar& best,
                                 bool goal_reached_flag);

/// -(exp(alpha * max(0, f_max - f_limit)) - 1), <= 0.
double force_penalty(double f_max, double f_limit, double alpha);

/// Head contacts have no safe threshold: force_penalty with limit 0.
double head_safety(double f_head, double alpha = 0.1);

/// Gaussian pull toward the skill's hand-off posture, active only after the
/// goal is reached and within the final second of the episode. `squared`
/// selects exp(-beta*|dq|^2); the default uses the unsquared norm.
double terminal_posture(const sim::JointVec& q, const sim::JointVec& q_target, int t,
                        int episode_len, bool goal_reached_flag, double beta = 0.1,
                        int one_second_steps = 50, bool squared = false);

struct SurvivalTermination {
  double alive;        // 1 unless terminated
  double termination;  // 1 only on failure termination (not timeout)
};
SurvivalTermination survival_and_termination(bool terminated, bool timeout);

/// Raw values of the shared regularization suite, in breakdown order:
/// joint_limits, hip_deviation, joint_velocity, joint_accel, action_rate,
/// torque, power, body_slip, base_ang_vel, base_accel, body_accel.
struct RegularizationInputs {
  const sim::RobotState* state = nullptr;
  const sim::RobotState* prev_state = nullptr;  // for accelerations
  sim::JointVec action{};
  sim::JointVec prev_action{};
  sim::JointVec torques{};
  const std::vector<sim::ContactPoint>* contacts = nullptr;
  const sim::RobotModel* model = nullptr;
  double dt = 0.02;
  // world velocities of the tracked body points at the previous step, in
  // BodyPart order; used for the body-acceleration penalty
  std::array<sim::Vec2, sim::kNumBodyParts> prev_part_vel{};
  std::array<sim::Vec2, sim::kNumBodyParts> part_vel{};
  double hip_deviation_bound = 2.2;  // rad
};
struct RegularizationValues {
  double joint_limits = 0.0;
  double hip_deviation = 0.0;
  double joint_velocity = 0.0;
  double joint_accel = 0.0;
  double action_rate = 0.0;
  double torque = 0.0;
  double power = 0.0;
  double body_slip = 0.0;
  double base_ang_vel = 0.0;
  double base_accel = 0.0;
  double body_accel = 0.0;
};
RegularizationValues regularization_suite(const RegularizationInputs& in);

/// Periodic locomotion terms (planar reduction: forward velocity only).
struct LocomotionInputs {
  const sim::RobotState* state = nullptr;
  double v_cmd = 0.0;
  double phase = 0.0;  // [0,1), 50% duty cycle, foot L leads
  const std::vector<sim::ContactPoint>* contacts = nullptr;
  std::array<double, 2> feet_air_time{};  // s, per foot, before this step
  std::array<double, 2> feet_height{};    // m above local terrain
  std::array<bool, 2> feet_contact{};
  std::array<bool, 2> feet_touchdown{};       // first contact after a swing
  double base_height_above_terrain = 0.0;
  double desired_base_height = 0.0;
  double swing_height_target = 0.08;  // m
};
struct LocomotionValues {
  double track_lin_vel = 0.0;      // exp(-(vx - cmd)^2 / 0.5^2)
  double vertical_vel = 0.0;       // vz^2
  double height_penalty = 0.0;     // (base z above terrain - desired)^2
  double gait_phase = 0.0;         // feet matching the phase schedule, 0..2
  double feet_air_time = 0.0;      // (air time - 0.5) on touchdown while moving
  double feet_swing_height = 0.0;  // sum 1{swing} (0.08 - h)^2
};
LocomotionValues locomotion_rewards(const LocomotionInputs& in);

/// Expected stance flags for the 50% duty-cycle alternating gait.
std::array<bool, 2> gait_target_contacts(double phase);

/// Baseline task rewards (one active per experiment).
enum class BaselineKind { kVelocity, kSparseSuccess, kDistance, kDirection, kIncrement };
struct BaselineInputs {
  double base_vx = 0.0, base_vz = 0.0;  // world base velocity
  double v_cmd = 0.0;                   // world-frame forward command
  double base_x = 0.0, base_z = 0.0;
  double goal_x = 0.0, goal_z = 0.0;
  bool goal_reached = false;            // gates increment terms and sparse success
  const task::TaskState* x = nullptr;       // increment: current components
  const task::TaskState* prev_x = nullptr;  // increment: previous components
  double stall_speed = 0.1;                 // m/s, direction reward stall threshold
};
/// Scalar kinds return one value; kIncrement returns one per component.
std::vector<double> baseline_task_reward(BaselineKind kind, const BaselineInputs& in);

}  // namespace clamber::reward
