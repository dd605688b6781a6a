#include "clamber/task/task_state.hpp"

#include <cmath>
#include <stdexcept>

#include "clamber/sim/pose_sampler.hpp"

namespace clamber::task {

const char* skill_name(SkillId s) {
  switch (s) {
    case SkillId::kClimbUp: return "climb_up";
    case SkillId::kClimbDown: return "climb_down";
    case SkillId::kStandUp: return "stand_up";
    case SkillId::kLieDown: return "lie_down";
    case SkillId::kWalk: return "walk";
    case SkillId::kCrawl: return "crawl";
  }
  return "?";
}

SkillId skill_from_name(const std::string& name) {
  for (int i = 0; i < kNumSkills; ++i) {
    const auto s = static_cast<SkillId>(i);
    if (name == skill_name(s)) return s;
  }
  throw std::invalid_argument("unknown skill: " + name);
}

BestSoFar BestSoFar::init(const TaskState& x0) {
  BestSoFar b;
  b.skill = x0.skill;
  b.values.reserve(x0.components.size());
  for (const auto& c : x0.components) b.values.push_back(c.value);
  return b;
}

BestSoFar update_best(const BestSoFar& best, const TaskState& x) {
  if (best.skill != x.skill || best.values.size() != x.components.size())
    throw std::invalid_argument("update_best: component mismatch");
  BestSoFar out = best;
  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& c = x.components[i];
    out.values[i] = (c.direction == Direction::kIncrease) ? std::max(out.values[i], c.value)
                                                          : std::min(out.values[i], c.value);
  }
  return out;
}

bool goal_reached(SkillId skill, const TaskState& x, const GoalSpec& goal) {
  if (goal.skill != skill || goal.thresholds.size() != x.components.size())
    throw std::invalid_argument("goal_reached: component mismatch");
  for (std::size_t i = 0; i < x.components.size(); ++i) {
    const auto& c = x.components[i];
    const double thr = goal.thresholds[i];
    const bool ok = (c.direction == Direction::kIncrease) ? (c.value > thr) : (c.value < thr);
    if (!ok) return false;
  }
  return true;
}

double balance_margin(const sim::RobotState& state, const sim::RobotModel& model) {
  const sim::FkCache fk = sim::forward_kinematics(state, model);
  return std::abs(fk.com.x() - fk.points.feet_center().x());
}

TaskState extract_task_state(SkillId skill, const sim::RobotState& state,
                             const sim::Terrain& terrain, const sim::RobotModel& model) {
  if (!is_maneuver(skill))
    throw std::invalid_argument("extract_task_state: locomotion skill has no task state");
  (void)terrain;
  const sim::FkCache fk = sim::forward_kinematics(state, model);
  TaskState x;
  x.skill = skill;
  switch (skill) {
    case SkillId::kClimbUp:
      x.components = {{"lb_height", fk.points.pelvis.y(), Direction::kIncrease},
                      {"com_x", fk.com.x(), Direction::kIncrease}};
      break;
    case SkillId::kClimbDown:
      x.components = {{"lb_height", fk.points.pelvis.y(), Direction::kDecrease},
                      {"com_x", fk.com.x(), Direction::kDecrease}};
      break;
    case SkillId::kStandUp:
      x.components = {{"head_height", fk.points.head.y(), Direction::kIncrease},
                      {"d_bal", std::abs(fk.com.x() - fk.points.feet_center().x()),
                       Direction::kDecrease}};
      break;
    case SkillId::kLieDown:
      x.components = {{"com_height", fk.com.y(), Direction::kDecrease},
                      {"head_height", fk.points.head.y(), Direction::kDecrease}};
      break;
    default:
      break;
  }
  return x;
}

GoalSpec derive_goal_spec(SkillId skill, const sim::Terrain& terrain,
                          const sim::RobotModel& model, double balance_threshold) {
  if (!is_maneuver(skill)) throw std::invalid_argument("derive_goal_spec: maneuver skills only");
  GoalSpec g;
  g.skill = skill;

  const sim::Terrain flat = sim::flat_terrain();
  const sim::RobotState stand = sim::nominal_pose(SkillId::kWalk, flat, model, 0.0);
  const sim::RobotState prone = sim::nominal_pose(SkillId::kCrawl, flat, model, 0.0);
  const sim::FkCache stand_fk = sim::forward_kinematics(stand, model);
  const sim::FkCache prone_fk = sim::forward_kinematics(prone, model);

  switch (skill) {
    case SkillId::kClimbUp:
      g.thresholds = {terrain.edge_height, terrain.edge_x};
      break;
    case SkillId::kClimbDown:
      // pelvis back under standing height (with 10% slack) on the low side
      g.thresholds = {1.10 * stand_fk.points.pelvis.y(), terrain.edge_x};
      break;
    case SkillId::kStandUp:
      g.thresholds = {0.90 * stand_fk.points.head.y(), balance_threshold};
      break;
    case SkillId::kLieDown:
      g.thresholds = {1.10 * prone_fk.com.y(), 1.10 * prone_fk.points.head.y()};
      break;
    default:
      break;
  }
  return g;
}

}  // namespace clamber::task
