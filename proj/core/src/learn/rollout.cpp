#include "clamber/learn/rollout.hpp"

#include <stdexcept>

namespace clamber::learn {

RolloutBuffer::RolloutBuffer(int num_envs, int steps_per_env, int obs_dim, int critic_obs_dim,
                             int action_dim)
    : num_envs_(num_envs), steps_per_env_(steps_per_env) {
  const int n = size();
  obs.setZero(obs_dim, n);
  critic_obs.setZero(critic_obs_dim, n);
  actions.setZero(action_dim, n);
  action_mean.setZero(action_dim, n);
  action_std.setZero(action_dim, n);
  log_probs.setZero(n);
  values.setZero(n);
  rewards.setZero(n);
  dones.assign(n, 0);
  timeouts.assign(n, 0);
  bootstrap_values.setZero(n);
  last_values.setZero(num_envs);
  filled.assign(n, 0);
}

void RolloutBuffer::set_step(int step, int env, const Eigen::VectorXf& o,
                             const Eigen::VectorXf& co, const Eigen::VectorXf& a,
                             const Eigen::VectorXf& mean, const Eigen::VectorXf& std,
                             double log_prob, double value, double reward, bool done,
                             bool timeout, double bootstrap_value) {
  const int c = col(step, env);
  obs.col(c) = o;
  critic_obs.col(c) = co;
  actions.col(c) = a;
  action_mean.col(c) = mean;
  action_std.col(c) = std;
  log_probs[c] = log_prob;
  values[c] = value;
  rewards[c] = reward;
  dones[c] = done ? 1 : 0;
  timeouts[c] = timeout ? 1 : 0;
  bootstrap_values[c] = bootstrap_value;
  filled[c] = 1;
}

bool RolloutBuffer::complete() const {
  for (unsigned char f : filled)
    if (!f) return false;
  return true;
}

void RolloutBuffer::clear() {
  filled.assign(filled.size(), 0);
}

GaeResult compute_gae(const RolloutBuffer& buffer, double gamma, double lambda) {
  if (!buffer.complete())
    throw std::invalid_argument("compute_gae: rollout buffer is incomplete");
  const int T = buffer.steps_per_env();
  const int E = buffer.num_envs();
  GaeResult out;
  out.advantages.setZero(buffer.size());
  out.returns.setZero(buffer.size());

  for (int e = 0; e < E; ++e) {
    double gae = 0.0;
    for (int t = T - 1; t >= 0; --t) {
      const int c = buffer.col(t, e);
      const bool done = buffer.dones[c] != 0;
      const bool timeout = buffer.timeouts[c] != 0;
      double next_value;
      if (done) {
        next_value = timeout ? buffer.bootstrap_values[c] : 0.0;
      } else {
        next_value = (t + 1 < T) ? buffer.values[buffer.col(t + 1, e)] : buffer.last_values[e];
      }
      const double delta = buffer.rewards[c] + gamma * next_value - buffer.values[c];
      gae = delta + gamma * lambda * (done ? 0.0 : 1.0) * gae;
      out.advantages[c] = gae;
      out.returns[c] = gae + buffer.values[c];
    }
  }
  return out;
}

}  // namespace clamber::learn
