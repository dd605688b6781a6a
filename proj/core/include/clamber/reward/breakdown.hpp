#pragma once

#include <string>
#include <vector>

#include "clamber/reward/terms.hpp"
#include "clamber/reward/weights.hpp"
#include "clamber/task/task_state.hpp"

namespace clamber::reward {

/// Episode-scoped bookkeeping the reward sum needs: step index, horizon,
/// latched goal flag, the best-so-far tracker and the previous task state.
struct EpisodeContext {
  int t = 0;
  int episode_len = 350;
  int one_second_steps = 50;
  bool goal_reached_flag = false;  // latches true
  task::BestSoFar best;            // updated through x_{t-1}
  task::TaskState prev_task_state;
  bool terminated = false;
  bool timeout = false;
};

/// Named per-term (raw, weighted) values for one step. Raw values follow
/// the weight-table formulas (penalty indicators are nonnegative and carry
/// negative weights).
struct RewardBreakdown {
  struct Entry {
    std::string name;
    double raw = 0.0;
    double weighted = 0.0;
  };
  std::vector<Entry> entries;
  double total = 0.0;

  void add(const std::string& name, double raw, double weight);
  double raw_of(const std::string& name) const;       // throws if missing
  double weighted_of(const std::string& name) const;  // throws if missing
};

/// All step inputs for the five-part maneuver sum (or the locomotion sum).
struct TotalRewardInputs {
  task::SkillId skill = task::SkillId::kClimbUp;
  TaskRewardProfile profile = TaskRewardProfile::kRatchet;
  const task::TaskState* x = nullptr;
  RegularizationInputs reg;
  LocomotionInputs loco;
  BaselineInputs baseline;
  double max_contact_force = 0.0;  // N, over non-head parts
  double head_contact_force = 0.0;
  double force_limit = 500.0;
  double force_alpha = 0.01;
  const sim::JointVec* q_terminal_target = nullptr;
  bool terminal_posture_squared = false;
};

/// One reward step: survival + regularization + force + task + terminal
/// posture for maneuvers, or the periodic locomotion sum for walk/crawl.
/// The task term is the ratchet set or exactly one baseline, selected by
/// the profile in `in`.
RewardBreakdown total_reward(const EpisodeContext& ctx, const TotalRewardInputs& in,
                             const RewardWeights& weights);

/// Stable breakdown column names for a skill/profile pair (CSV headers).
std::vector<std::string> breakdown_columns(task::SkillId skill, TaskRewardProfile profile);

}  // namespace clamber::reward
