#include "clamber/learn/layout.hpp"

#include <cmath>
#include <stdexcept>

namespace clamber::learn {

ObservationLayout ObservationLayout::for_skill(task::SkillId skill) {
  ObservationLayout l;
  l.skill = skill;
  if (task::is_maneuver(skill)) {
    l.task_state_dim = 2;
    l.map_dim = task::uses_elevation_map(skill) ? percep::kMapCells : 0;
    l.command_dim = 0;
  } else {
    l.task_state_dim = 0;
    l.map_dim = 0;
    l.command_dim = 3;  // sin/cos phase, velocity command
  }
  return l;
}

ObservationLayout ObservationLayout::unified() {
  ObservationLayout l;
  l.skill = task::SkillId::kWalk;  // placeholder; unified serves all skills
  l.task_state_dim = 2;
  l.map_dim = percep::kMapCells;
  l.command_dim = 3;
  l.extra_command_dim = 2;  // stand-up / lie-down triggers
  return l;
}

std::vector<int> ObservationLayout::mirror_permutation() const {
  std::vector<int> perm(actor_dim());
  for (int i = 0; i < actor_dim(); ++i) perm[i] = i;
  auto swap_pair = [&](int a, int b) {
    perm[a] = b;
    perm[b] = a;
  };
  for (int h = 0; h < kHistoryLen; ++h) {
    const int base = h * history_block();
    // proprio q channels at +3, qd at +9: left leg (hip, knee) <-> right leg
    swap_pair(base + 3 + sim::kHipL, base + 3 + sim::kHipR);
    swap_pair(base + 3 + sim::kKneeL, base + 3 + sim::kKneeR);
    swap_pair(base + 9 + sim::kHipL, base + 9 + sim::kHipR);
    swap_pair(base + 9 + sim::kKneeL, base + 9 + sim::kKneeR);
    // previous action channels at +15
    swap_pair(base + 15 + sim::kHipL, base + 15 + sim::kHipR);
    swap_pair(base + 15 + sim::kKneeL, base + 15 + sim::kKneeR);
  }
  return perm;
}

std::vector<int> ObservationLayout::critic_mirror_permutation() const {
  std::vector<int> perm = mirror_permutation();
  for (int i = actor_dim(); i < critic_dim(); ++i) perm.push_back(i);
  return perm;
}

sim::JointVec mirror_action(const sim::JointVec& a) {
  sim::JointVec m = a;
  std::swap(m[sim::kHipL], m[sim::kHipR]);
  std::swap(m[sim::kKneeL], m[sim::kKneeR]);
  return m;
}

Eigen::Matrix<float, kProprioDim, 1> proprio_snapshot(const sim::RobotState& s,
                                                      const ObservationNoise& noise, Rng& rng) {
  Eigen::Matrix<float, kProprioDim, 1> p;
  auto u = [&](double range) {
    return noise.enabled ? rng.uniform(-range, range) : 0.0;
  };
  p[0] = static_cast<float>(-std::sin(s.pitch) + u(noise.gravity));
  p[1] = static_cast<float>(-std::cos(s.pitch) + u(noise.gravity));
  p[2] = static_cast<float>(s.pitch_rate + u(noise.ang_vel));
  for (int j = 0; j < sim::kNumJoints; ++j) {
    p[3 + j] = static_cast<float>(s.q[j] + u(noise.joint_pos));
    p[9 + j] = static_cast<float>(s.qd[j] + u(noise.joint_vel));
  }
  return p;
}

Eigen::VectorXf build_observation(const ObservationLayout& layout, const ObservationInputs& in) {
  if (!in.proprio_history || !in.action_history ||
      in.proprio_history->size() != static_cast<std::size_t>(kHistoryLen) ||
      in.action_history->size() != static_cast<std::size_t>(kHistoryLen))
    throw std::invalid_argument("build_observation: history must hold exactly 5 entries");

  Eigen::VectorXf obs = Eigen::VectorXf::Zero(layout.actor_dim());
  int k = 0;
  for (int h = 0; h < kHistoryLen; ++h) {
    obs.segment<kProprioDim>(k) = (*in.proprio_history)[h];
    k += kProprioDim;
    const auto& a = (*in.action_history)[h];
    for (int j = 0; j < sim::kNumJoints; ++j) obs[k + j] = static_cast<float>(a[j]);
    k += sim::kNumJoints;
  }

  if (layout.task_state_dim > 0) {
    if (in.task_state) {
      if (static_cast<int>(in.task_state->size()) != layout.task_state_dim)
        throw std::invalid_argument("build_observation: task-state dimension mismatch");
      for (int i = 0; i < layout.task_state_dim; ++i)
        obs[k + i] = static_cast<float>(in.task_state->components[i].value);
    }
    k += layout.task_state_dim;
  }

  if (layout.map_dim > 0) {
    if (in.map) {
      for (int i = 0; i < percep::kMapCells; ++i)
        obs[k + i] = static_cast<float>(in.map->grid[i] - in.base_z);
    }
    k += layout.map_dim;
  }

  if (layout.command_dim > 0) {
    obs[k + 0] = static_cast<float>(std::sin(2.0 * M_PI * in.phase));
    obs[k + 1] = static_cast<float>(std::cos(2.0 * M_PI * in.phase));
    obs[k + 2] = static_cast<float>(in.v_cmd);
    k += layout.command_dim;
  }
  if (layout.extra_command_dim > 0) {
    obs[k + 0] = static_cast<float>(in.trigger_stand);
    obs[k + 1] = static_cast<float>(in.trigger_lie);
    k += layout.extra_command_dim;
  }
  if (k != layout.actor_dim()) throw std::logic_error("build_observation: layout mismatch");
  return obs;
}

Eigen::VectorXf build_critic_observation(const ObservationLayout& layout,
                                         const Eigen::VectorXf& actor_obs,
                                         const task::BestSoFar& best) {
  if (actor_obs.size() != layout.actor_dim())
    throw std::invalid_argument("build_critic_observation: actor dim mismatch");
  if (static_cast<int>(best.values.size()) != layout.critic_extra_dim())
    throw std::invalid_argument("build_critic_observation: best-so-far dim mismatch");
  Eigen::VectorXf out(layout.critic_dim());
  out.head(layout.actor_dim()) = actor_obs;
  for (int i = 0; i < layout.critic_extra_dim(); ++i)
    out[layout.actor_dim() + i] = static_cast<float>(best.values[i]);
  return out;
}

std::pair<Eigen::VectorXf, sim::JointVec> symmetry_augment(const ObservationLayout& layout,
                                                           const Eigen::VectorXf& obs,
                                                           const sim::JointVec& action) {
  const auto perm = layout.mirror_permutation();
  if (obs.size() != static_cast<int>(perm.size()))
    throw std::invalid_argument("symmetry_augment: obs dim mismatch");
  Eigen::VectorXf mirrored(obs.size());
  for (int i = 0; i < obs.size(); ++i) mirrored[i] = obs[perm[i]];
  return {mirrored, mirror_action(action)};
}

}  // namespace clamber::learn
