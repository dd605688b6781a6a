#pragma once

#include <Eigen/Dense>
#include <array>
#include <deque>
#include <optional>
#include <vector>

#include "clamber/common/rng.hpp"
#include "clamber/percep/elevation_map.hpp"
#include "clamber/sim/model.hpp"
#include "clamber/sim/state.hpp"
#include "clamber/task/task_state.hpp"

namespace clamber::learn {

inline constexpr int kProprioDim = 15;  // gravity projection 2, pitch rate 1, q 6, qd 6
inline constexpr int kHistoryLen = 5;   // ordered oldest -> newest

/// Uniform additive observation noise ranges, per channel group.
struct ObservationNoise {
  double ang_vel = 0.2;   // rad/s
  double gravity = 0.05;
  double joint_pos = 0.1;  // rad
  double joint_vel = 1.5;  // rad/s
  bool enabled = true;
};

/// Named slices of the actor observation for one skill:
///   [history of (proprio, prev action)] [task state] [map] [commands]
/// The critic appends the best-so-far components after the actor slices.
struct ObservationLayout {
  task::SkillId skill = task::SkillId::kClimbUp;
  int task_state_dim = 0;
  int map_dim = 0;
  int command_dim = 0;  // locomotion: sin/cos phase + velocity command
  int extra_command_dim = 0;  // unified student layout: trigger bits

  static ObservationLayout for_skill(task::SkillId skill);
  /// One fixed layout serving all six skills (distillation student):
  /// unused slices are zero-filled, plus stand-up/lie-down trigger bits.
  static ObservationLayout unified();

  int history_block() const { return kProprioDim + sim::kNumJoints; }
  int history_dim() const { return kHistoryLen * history_block(); }
  int history_offset() const { return 0; }
  int task_offset() const { return history_dim(); }
  int map_offset() const { return task_offset() + task_state_dim; }
  int command_offset() const { return map_offset() + map_dim; }
  int actor_dim() const { return command_offset() + command_dim + extra_command_dim; }
  int critic_extra_dim() const { return task_state_dim; }  // best-so-far
  int critic_dim() const { return actor_dim() + critic_extra_dim(); }

  /// Channel permutation realizing the planar left/right mirror on actor
  /// observations (legs swapped everywhere, other channels fixed).
  std::vector<int> mirror_permutation() const;
  std::vector<int> critic_mirror_permutation() const;
};

/// Left/right leg swap on an action vector.
sim::JointVec mirror_action(const sim::JointVec& a);

/// Proprio snapshot with observation noise applied at capture time.
Eigen::Matrix<float, kProprioDim, 1> proprio_snapshot(const sim::RobotState& s,
                                                      const ObservationNoise& noise, Rng& rng);

struct ObservationInputs {
  // history, oldest -> newest; both deques hold exactly kHistoryLen entries
  const std::deque<Eigen::Matrix<float, kProprioDim, 1>>* proprio_history = nullptr;
  const std::deque<sim::JointVec>* action_history = nullptr;
  const task::TaskState* task_state = nullptr;       // maneuvers
  const percep::ElevationMap* map = nullptr;         // climb skills
  double phase = 0.0;                                // locomotion
  double v_cmd = 0.0;
  double trigger_stand = 0.0;  // unified layout only
  double trigger_lie = 0.0;
  double base_z = 0.0;  // map heights are encoded relative to the base
};

Eigen::VectorXf build_observation(const ObservationLayout& layout, const ObservationInputs& in);

Eigen::VectorXf build_critic_observation(const ObservationLayout& layout,
                                         const Eigen::VectorXf& actor_obs,
                                         const task::BestSoFar& best);

/// Mirrored (obs, action) pair under the layout's permutation; an involution.
std::pair<Eigen::VectorXf, sim::JointVec> symmetry_augment(const ObservationLayout& layout,
                                                           const Eigen::VectorXf& obs,
                                                           const sim::JointVec& action);

}  // namespace clamber::learn
