#pragma once

#include <functional>
#include <string>

#include "clamber/env/environment.hpp"
#include "clamber/learn/checkpoint.hpp"
#include "clamber/learn/ppo.hpp"
#include "clamber/learn/rnd.hpp"

namespace clamber::learn {

struct TrainConfig {
  int num_envs = 256;
  int steps_per_env = 24;
  int iterations = 800;
  std::vector<int> hidden = {128, 64};
  PPOConfig ppo;
  bool symmetry_augmentation = true;
  double rnd_intrinsic_coef = 1.0;  // used only by the RND baseline profile
  int log_every = 10;
  int num_threads = 0;  // 0: read CLAMBER_WORKERS, default 1
};

struct IterationLog {
  int iteration = 0;
  double mean_task_reward = 0.0;
  double success_rate = 0.0;
  double mean_episode_len = 0.0;
  double kl = 0.0;
  double clip_fraction = 0.0;
  double learning_rate = 0.0;
  double mean_total_reward = 0.0;
};

struct TrainResult {
  ActorCritic policy;
  RunningNormalizer obs_norm;
  std::vector<IterationLog> curve;
  ObservationLayout layout;
};

/// End-to-end single-skill PPO training: parallel environments, observation
/// normalization, GAE, clipped-surrogate updates, optional symmetry
/// augmentation and RND intrinsic bonus. Reproducible for a fixed seed.
TrainResult train_skill(const env::EnvConfig& env_cfg, const sim::RobotModel& model,
                        const TrainConfig& cfg, std::uint64_t seed,
                        const std::function<void(const IterationLog&)>& on_iteration = {});

/// Policy + normalizer + layout identity as a named-tensor checkpoint.
Checkpoint policy_checkpoint(const ActorCritic& ac, const RunningNormalizer& obs_norm,
                             const ObservationLayout& layout);
void restore_policy(const Checkpoint& ckpt, ActorCritic& ac, RunningNormalizer& obs_norm);
std::string layout_description(const ObservationLayout& layout);

struct EvalEpisode {
  bool success = false;
  double peak_force = 0.0;
  int length = 0;
  double total_reward = 0.0;
};

/// Deterministic-policy evaluation episode on a fresh environment.
EvalEpisode evaluate_episode(const ActorCritic& ac, const RunningNormalizer& obs_norm,
                             const env::EnvConfig& env_cfg, const sim::RobotModel& model,
                             std::uint64_t seed, std::uint64_t stream);

}  // namespace clamber::learn
