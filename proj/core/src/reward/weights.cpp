#include "clamber/reward/weights.hpp"

#include <stdexcept>

namespace clamber::reward {

const char* profile_name(TaskRewardProfile p) {
  switch (p) {
    case TaskRewardProfile::kRatchet: return "ratchet";
    case TaskRewardProfile::kVelocity: return "velocity";
    case TaskRewardProfile::kRnd: return "rnd";
    case TaskRewardProfile::kDistance: return "distance";
    case TaskRewardProfile::kDistanceLessReg: return "distance-lessreg";
    case TaskRewardProfile::kDirection: return "direction";
    case TaskRewardProfile::kIncrement: return "increment";
  }
  return "?";
}

TaskRewardProfile profile_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(TaskRewardProfile::kIncrement); ++i) {
    const auto p = static_cast<TaskRewardProfile>(i);
    if (name == profile_name(p)) return p;
  }
  throw std::invalid_argument("unknown task-reward profile: " + name);
}

void RewardWeights::set(const std::string& name, double w) {
  for (auto& e : entries_) {
    if (e.first == name) {
      e.second = w;
      return;
    }
  }
  entries_.emplace_back(name, w);
}

double RewardWeights::get(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.first == name) return e.second;
  throw std::out_of_range("no weight for reward term: " + name);
}

bool RewardWeights::has(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.first == name) return true;
  return false;
}

RewardWeights maneuver_weights(TaskRewardProfile profile) {
  RewardWeights w;
  w.set("survival", 15.0);
  w.set("termination", -800.0);
  w.set("force_penalty", -1.0);
  w.set("head_safety", -1.0);
  w.set("joint_limits", -10.0);
  w.set("hip_deviation", -1.0);
  w.set("joint_velocity", -0.001);
  w.set("joint_accel", -2e-8);
  w.set("action_rate", -0.2);
  w.set("torque", -1.5e-5);
  w.set("power", -1e-5);
  w.set("body_slip", -0.1);
  w.set("base_ang_vel", -0.005);
  w.set("base_accel", -0.0001);
  w.set("body_accel", -0.0002);

  switch (profile) {
    case TaskRewardProfile::kRatchet:
      w.set("ratchet_0", -4.0);
      w.set("ratchet_1", -4.0);
      break;
    case TaskRewardProfile::kVelocity:
      w.set("baseline_velocity", 4.0);
      break;
    case TaskRewardProfile::kRnd:
      w.set("baseline_sparse_success", 8.0);
      w.set("rnd_intrinsic", 1.0);
      break;
    case TaskRewardProfile::kDistance:
      w.set("baseline_distance", 8.0);
      break;
    case TaskRewardProfile::kDistanceLessReg:
      // contact-force regularization reduced by a factor of 10
      w.set("baseline_distance", 8.0);
      w.set("force_penalty", -0.1);
      w.set("head_safety", -0.1);
      break;
    case TaskRewardProfile::kDirection:
      w.set("baseline_direction", 8.0);
      break;
    case TaskRewardProfile::kIncrement:
      w.set("baseline_increment_0", 4.0);
      w.set("baseline_increment_1", 4.0);
      break;
  }
  w.set("terminal_posture", 7.0);
  return w;
}

RewardWeights locomotion_weights(task::SkillId skill) {
  const bool walk = skill == task::SkillId::kWalk;
  RewardWeights w;
  w.set("track_lin_vel", 1.3);
  w.set("vertical_vel", -2.0);
  w.set("pitch_vel", walk ? -0.15 : -0.05);
  w.set("height_penalty", -10.0);
  w.set("joint_accel", -2.5e-7);
  w.set("joint_velocity", -1.5e-3);
  w.set("action_rate", -0.1);
  w.set("joint_limits", -5.0);
  w.set("survival", walk ? 0.2 : 10.0);
  w.set("torque", -1.0e-5);
  w.set("undesired_contact", -1.0);
  if (walk) {
    w.set("base_orientation", -1.0);
    w.set("hip_posture", -1.0);
    w.set("contact_slip", -0.2);
    w.set("feet_swing_height", -20.0);
    w.set("gait_phase", 0.18);
    w.set("feet_air_time", 0.1);
  } else {
    w.set("termination", -100.0);
    w.set("lying_deviation", -1.0);
    w.set("contact_force_linear", -0.01);
  }
  return w;
}

}  // namespace clamber::reward
