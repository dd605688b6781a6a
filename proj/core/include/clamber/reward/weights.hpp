#pragma once

#include <string>
#include <vector>

#include "clamber/task/skill.hpp"

namespace clamber::reward {

/// Which task reward drives goal completion. Exactly one profile is active
/// per experiment; the ratchet profile is the default, the others are the
/// comparative baselines.
enum class TaskRewardProfile : int {
  kRatchet = 0,
  kVelocity = 1,
  kRnd = 2,
  kDistance = 3,
  kDistanceLessReg = 4,
  kDirection = 5,
  kIncrement = 6,
};
const char* profile_name(TaskRewardProfile p);
TaskRewardProfile profile_from_name(const std::string& name);

/// Ordered term-name -> weight table. Order is stable so CSV columns and
/// serialized configs never reshuffle.
class RewardWeights {
 public:
  void set(const std::string& name, double w);
  double get(const std::string& name) const;  // throws if missing
  bool has(const std::string& name) const;
  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

/// Default weights for the non-periodic maneuvers (survival 15, termination
/// -800, force -1, ratchet components -4 each, terminal posture 7, plus the
/// regularization suite) with the selected task profile's terms enabled.
RewardWeights maneuver_weights(TaskRewardProfile profile);

/// Default weights for walk/crawl (velocity tracking, gait shaping).
RewardWeights locomotion_weights(task::SkillId skill);

}  // namespace clamber::reward
