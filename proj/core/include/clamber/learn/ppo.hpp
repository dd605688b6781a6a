#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "clamber/common/rng.hpp"
#include "clamber/learn/adam.hpp"
#include "clamber/learn/mlp.hpp"
#include "clamber/learn/normalizer.hpp"
#include "clamber/learn/rollout.hpp"

namespace clamber::learn {

struct PolicySpec {
  std::vector<int> hidden = {128, 64};
  int input_dim = 0;
  int critic_input_dim = 0;
  int output_dim = 0;
  double init_log_std = 0.0;
  double final_gain = 0.01;
};

struct PPOConfig {
  double learning_rate = 1.0e-3;  // adapted toward desired_kl
  double clip = 0.2;
  double entropy_coef = 0.01;
  double gamma = 0.99;
  double lam = 0.95;
  double desired_kl = 0.01;
  int epochs = 5;
  int minibatches = 4;
  double max_grad_norm = 1.0;
  double value_loss_coef = 1.0;
  double lr_min = 1e-6;
  double lr_max = 1e-2;
  void validate() const;
};

/// Gaussian-policy actor-critic: MLP mean, state-independent log-std, MLP
/// value head. All parameters live in one flat order (actor, log_std,
/// critic) for the optimizer and checkpoints.
struct ActorCritic {
  Mlp<float> actor;
  Eigen::VectorXf log_std;
  Mlp<float> critic;

  static ActorCritic create(const PolicySpec& spec, Rng& rng);

  Eigen::MatrixXf action_mean(const Eigen::MatrixXf& obs) const { return actor.forward(obs); }
  Eigen::VectorXf value(const Eigen::MatrixXf& critic_obs) const;

  int param_count() const;
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& flat);
};

struct UpdateStats {
  double mean_kl = 0.0;
  double clip_fraction = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double learning_rate = 0.0;
};

/// Clipped-surrogate PPO update over epochs x minibatches with KL-adaptive
/// learning rate and global gradient-norm clipping. `lr` is read and
/// written (the adapted rate persists across iterations).
UpdateStats ppo_update(ActorCritic& ac, Adam& opt, const RolloutBuffer& buffer,
                       const GaeResult& gae, const PPOConfig& cfg, double& lr, Rng& rng,
                       const std::vector<int>* obs_mirror = nullptr,
                       const std::vector<int>* critic_obs_mirror = nullptr,
                       const std::vector<int>* action_mirror = nullptr);

}  // namespace clamber::learn
