#pragma once

#include <Eigen/Dense>
#include <vector>

namespace clamber::learn {

/// Fixed-capacity on-policy storage, indexed [step][env]. Timeout steps
/// carry the value of the state that was cut off so advantages bootstrap
/// instead of treating the cut as failure.
class RolloutBuffer {
 public:
  RolloutBuffer(int num_envs, int steps_per_env, int obs_dim, int critic_obs_dim,
                int action_dim);

  int num_envs() const { return num_envs_; }
  int steps_per_env() const { return steps_per_env_; }
  int size() const { return num_envs_ * steps_per_env_; }

  // column s * num_envs + e of the (dim x size) matrices
  Eigen::MatrixXf obs;         // obs_dim x size
  Eigen::MatrixXf critic_obs;  // critic_obs_dim x size
  Eigen::MatrixXf actions;     // action_dim x size
  Eigen::MatrixXf action_mean;
  Eigen::MatrixXf action_std;
  Eigen::VectorXd log_probs;
  Eigen::VectorXd values;
  Eigen::VectorXd rewards;
  std::vector<unsigned char> dones;
  std::vector<unsigned char> timeouts;
  Eigen::VectorXd bootstrap_values;  // value of the next state on timeout steps
  Eigen::VectorXd last_values;       // per env: value of the state after the final step
  std::vector<unsigned char> filled;

  int col(int step, int env) const { return step * num_envs_ + env; }
  void set_step(int step, int env, const Eigen::VectorXf& o, const Eigen::VectorXf& co,
                const Eigen::VectorXf& a, const Eigen::VectorXf& mean,
                const Eigen::VectorXf& std, double log_prob, double value, double reward,
                bool done, bool timeout, double bootstrap_value);
  bool complete() const;
  void clear();

 private:
  int num_envs_, steps_per_env_;
};

/// Exponentially-weighted TD(lambda) advantages over the buffer, episode
/// chains reset at dones, timeout steps bootstrap their stored value.
/// Returns (advantages, returns); returns = advantages + values. Throws if
/// the buffer is incomplete.
struct GaeResult {
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
};
GaeResult compute_gae(const RolloutBuffer& buffer, double gamma, double lambda);

}  // namespace clamber::learn
