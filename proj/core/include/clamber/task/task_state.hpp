#pragma once

#include <string>
#include <vector>

#include "clamber/sim/kinematics.hpp"
#include "clamber/sim/model.hpp"
#include "clamber/sim/state.hpp"
#include "clamber/sim/terrain.hpp"
#include "clamber/task/skill.hpp"

namespace clamber::task {

enum class Direction { kIncrease, kDecrease };

/// Minimal vector of quantities that determines task completion for one
/// maneuver. The component set is fixed per skill.
struct TaskState {
  struct Component {
    std::string name;
    double value = 0.0;
    Direction direction = Direction::kIncrease;
  };
  SkillId skill = SkillId::kClimbUp;
  std::vector<Component> components;

  std::size_t size() const { return components.size(); }
};

/// Running per-component extremum (max for increase-direction components,
/// min for decrease-direction). Initialized from the first task state.
struct BestSoFar {
  SkillId skill = SkillId::kClimbUp;
  std::vector<double> values;

  static BestSoFar init(const TaskState& x0);
};

/// x*_{t} = extremum(x*_{t-1}, x_{t-1}), component-wise.
BestSoFar update_best(const BestSoFar& best, const TaskState& x);

/// Per-component success thresholds. An increase-direction component
/// succeeds when value > threshold (strict), decrease-direction when
/// value < threshold.
struct GoalSpec {
  SkillId skill = SkillId::kClimbUp;
  std::vector<double> thresholds;

  bool operator==(const GoalSpec&) const = default;
};

bool goal_reached(SkillId skill, const TaskState& x, const GoalSpec& goal);

/// Horizontal offset between the CoM and the feet midpoint.
double balance_margin(const sim::RobotState& state, const sim::RobotModel& model);

/// Task state per skill:
///   climb-up:   (pelvis height, CoM x), both increase
///   climb-down: (pelvis height decrease, CoM x toward beyond-edge)
///   stand-up:   (head height increase, balance margin decrease)
///   lie-down:   (CoM height decrease, head height decrease)
/// Throws std::invalid_argument for locomotion skills.
TaskState extract_task_state(SkillId skill, const sim::RobotState& state,
                             const sim::Terrain& terrain, const sim::RobotModel& model);

/// Default thresholds for a skill on this terrain/model. Posture-relative
/// thresholds come from nominal-pose forward kinematics with 10% slack; the
/// climb thresholds come from the terrain's platform edge.
GoalSpec derive_goal_spec(SkillId skill, const sim::Terrain& terrain,
                          const sim::RobotModel& model, double balance_threshold = 0.05);

}  // namespace clamber::task
