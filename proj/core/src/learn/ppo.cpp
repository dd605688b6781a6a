#include "clamber/learn/ppo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace clamber::learn {

void PPOConfig::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("PPO: gamma in (0,1] required");
  if (!(lam >= 0.0 && lam <= 1.0)) throw std::invalid_argument("PPO: lambda in [0,1] required");
  if (!(clip > 0.0)) throw std::invalid_argument("PPO: clip must be > 0");
  if (epochs < 1 || minibatches < 1) throw std::invalid_argument("PPO: epochs/minibatches >= 1");
}

ActorCritic ActorCritic::create(const PolicySpec& spec, Rng& rng) {
  if (spec.hidden.empty()) throw std::invalid_argument("policy needs at least one hidden layer");
  ActorCritic ac;
  std::vector<int> actor_sizes = {spec.input_dim};
  std::vector<int> critic_sizes = {spec.critic_input_dim};
  for (int h : spec.hidden) {
    actor_sizes.push_back(h);
    critic_sizes.push_back(h);
  }
  actor_sizes.push_back(spec.output_dim);
  critic_sizes.push_back(1);
  ac.actor = Mlp<float>::create(actor_sizes, rng, spec.final_gain);
  ac.log_std = Eigen::VectorXf::Constant(spec.output_dim, static_cast<float>(spec.init_log_std));
  ac.critic = Mlp<float>::create(critic_sizes, rng, 1.0);
  return ac;
}

Eigen::VectorXf ActorCritic::value(const Eigen::MatrixXf& critic_obs) const {
  return critic.forward(critic_obs).row(0).transpose();
}

int ActorCritic::param_count() const {
  return actor.param_count() + static_cast<int>(log_std.size()) + critic.param_count();
}

Eigen::VectorXd ActorCritic::flatten() const {
  Eigen::VectorXd flat(param_count());
  flat.head(actor.param_count()) = actor.flatten();
  for (int i = 0; i < log_std.size(); ++i)
    flat[actor.param_count() + i] = static_cast<double>(log_std[i]);
  flat.tail(critic.param_count()) = critic.flatten();
  return flat;
}

void ActorCritic::unflatten(const Eigen::VectorXd& flat) {
  if (flat.size() != param_count()) throw std::invalid_argument("ActorCritic::unflatten size");
  actor.unflatten(flat.head(actor.param_count()));
  for (int i = 0; i < log_std.size(); ++i)
    log_std[i] = static_cast<float>(flat[actor.param_count() + i]);
  critic.unflatten(flat.tail(critic.param_count()));
}

namespace {

Eigen::VectorXd flatten_grads(const Mlp<float>::Grads& ag, const Eigen::VectorXd& dlogstd,
                              const Mlp<float>::Grads& cg) {
  std::size_t n = dlogstd.size();
  for (std::size_t l = 0; l < ag.d_weights.size(); ++l)
    n += ag.d_weights[l].size() + ag.d_biases[l].size();
  for (std::size_t l = 0; l < cg.d_weights.size(); ++l)
    n += cg.d_weights[l].size() + cg.d_biases[l].size();
  Eigen::VectorXd flat(n);
  int k = 0;
  auto push = [&](const Mlp<float>::Grads& g) {
    for (std::size_t l = 0; l < g.d_weights.size(); ++l) {
      for (int i = 0; i < g.d_weights[l].rows(); ++i)
        for (int j = 0; j < g.d_weights[l].cols(); ++j)
          flat[k++] = static_cast<double>(g.d_weights[l](i, j));
      for (int i = 0; i < g.d_biases[l].size(); ++i)
        flat[k++] = static_cast<double>(g.d_biases[l][i]);
    }
  };
  push(ag);
  for (int i = 0; i < dlogstd.size(); ++i) flat[k++] = dlogstd[i];
  push(cg);
  return flat;
}

}  // namespace

UpdateStats ppo_update(ActorCritic& ac, Adam& opt, const RolloutBuffer& buffer,
                       const GaeResult& gae, const PPOConfig& cfg, double& lr, Rng& rng,
                       const std::vector<int>* obs_mirror,
                       const std::vector<int>* critic_obs_mirror,
                       const std::vector<int>* action_mirror) {
  cfg.validate();
  const int n0 = buffer.size();
  const bool augment = obs_mirror && critic_obs_mirror && action_mirror;
  const int n = augment ? 2 * n0 : n0;
  const int act_dim = static_cast<int>(buffer.actions.rows());

  // assemble the (possibly mirror-augmented) flat batch
  Eigen::MatrixXf obs(buffer.obs.rows(), n);
  Eigen::MatrixXf cobs(buffer.critic_obs.rows(), n);
  Eigen::MatrixXf acts(act_dim, n);
  Eigen::MatrixXf mu_old(act_dim, n);
  Eigen::MatrixXf std_old(act_dim, n);
  Eigen::VectorXd logp_old(n);
  Eigen::VectorXd adv(n);
  Eigen::VectorXd ret(n);

  obs.leftCols(n0) = buffer.obs;
  cobs.leftCols(n0) = buffer.critic_obs;
  acts.leftCols(n0) = buffer.actions;
  mu_old.leftCols(n0) = buffer.action_mean;
  std_old.leftCols(n0) = buffer.action_std;
  logp_old.head(n0) = buffer.log_probs;
  adv.head(n0) = gae.advantages;
  ret.head(n0) = gae.returns;

  if (augment) {
    for (int c = 0; c < n0; ++c) {
      for (int i = 0; i < obs.rows(); ++i) obs(i, n0 + c) = buffer.obs((*obs_mirror)[i], c);
      for (int i = 0; i < cobs.rows(); ++i)
        cobs(i, n0 + c) = buffer.critic_obs((*critic_obs_mirror)[i], c);
      for (int d = 0; d < act_dim; ++d) {
        acts(d, n0 + c) = buffer.actions((*action_mirror)[d], c);
        std_old(d, n0 + c) = buffer.action_std((*action_mirror)[d], c);
      }
    }
    adv.tail(n0) = gae.advantages;
    ret.tail(n0) = gae.returns;
    // log-prob and reference mean of the mirrored samples under the current
    // (pre-update) policy
    const Eigen::MatrixXf mu_m = ac.actor.forward(obs.rightCols(n0));
    mu_old.rightCols(n0) = mu_m;
    const Eigen::VectorXf sigma = ac.log_std.array().exp();
    for (int c = 0; c < n0; ++c) {
      double lp = 0.0;
      for (int d = 0; d < act_dim; ++d) {
        const double s = sigma[d];
        const double z = (acts(d, n0 + c) - mu_m(d, c)) / s;
        lp += -0.5 * z * z - std::log(s) - 0.5 * std::log(2.0 * M_PI);
      }
      logp_old[n0 + c] = lp;
    }
  }

  // advantage normalization, whole batch
  const double adv_mean = adv.mean();
  const double adv_std = std::sqrt((adv.array() - adv_mean).square().sum() / adv.size());
  adv = (adv.array() - adv_mean) / (adv_std + 1e-8);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const int mb_size = n / cfg.minibatches;

  Mlp<float>::Grads actor_grads, critic_grads;
  actor_grads.resize_like(ac.actor);
  critic_grads.resize_like(ac.critic);

  UpdateStats stats;
  int stat_batches = 0;
  double kl_sum = 0.0, clip_sum = 0.0, pl_sum = 0.0, vl_sum = 0.0, ent_sum = 0.0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Fisher-Yates with the deterministic stream
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);

    for (int mb = 0; mb < cfg.minibatches; ++mb) {
      const int start = mb * mb_size;
      const int bs = (mb + 1 == cfg.minibatches) ? n - start : mb_size;

      Eigen::MatrixXf o(obs.rows(), bs), co(cobs.rows(), bs), a(act_dim, bs);
      Eigen::MatrixXd m0(act_dim, bs), s0(act_dim, bs);
      Eigen::VectorXd lp0(bs), ad(bs), rt(bs);
      for (int i = 0; i < bs; ++i) {
        const int c = order[start + i];
        o.col(i) = obs.col(c);
        co.col(i) = cobs.col(c);
        a.col(i) = acts.col(c);
        m0.col(i) = mu_old.col(c).cast<double>();
        s0.col(i) = std_old.col(c).cast<double>();
        lp0[i] = logp_old[c];
        ad[i] = adv[c];
        rt[i] = ret[c];
      }

      Mlp<float>::Workspace actor_ws, critic_ws;
      const Eigen::MatrixXd mu = ac.actor.forward_ws(o, actor_ws).cast<double>();
      const Eigen::VectorXd sigma = ac.log_std.cast<double>().array().exp();

      // per-sample log-probs, ratios, KL against the stored reference
      Eigen::VectorXd logp(bs), kl(bs);
      Eigen::MatrixXd z(act_dim, bs);
      double log_sigma_sum = 0.0;
      for (int d = 0; d < act_dim; ++d) log_sigma_sum += std::log(sigma[d]);
      for (int i = 0; i < bs; ++i) {
        double lp = 0.0, k = 0.0;
        for (int d = 0; d < act_dim; ++d) {
          const double zz = (a(d, i) - mu(d, i)) / sigma[d];
          z(d, i) = zz;
          lp += -0.5 * zz * zz;
          const double dmu = m0(d, i) - mu(d, i);
          k += std::log(sigma[d] / s0(d, i)) +
               (s0(d, i) * s0(d, i) + dmu * dmu) / (2.0 * sigma[d] * sigma[d]) - 0.5;
        }
        logp[i] = lp - log_sigma_sum - 0.5 * act_dim * std::log(2.0 * M_PI);
        kl[i] = k;
      }
      const double kl_mean = kl.mean();

      // KL-adaptive learning rate
      if (cfg.desired_kl > 0.0) {
        if (kl_mean > cfg.desired_kl * 2.0)
          lr = std::max(cfg.lr_min, lr / 1.5);
        else if (kl_mean < cfg.desired_kl / 2.0 && kl_mean > 0.0)
          lr = std::min(cfg.lr_max, lr * 1.5);
      }

      const Eigen::VectorXd ratio = (logp - lp0).array().exp();
      Eigen::VectorXd dlogp = Eigen::VectorXd::Zero(bs);  // d(policy loss)/d logp_i
      double policy_loss = 0.0;
      int clipped = 0;
      for (int i = 0; i < bs; ++i) {
        const double r = ratio[i];
        const double rc = std::clamp(r, 1.0 - cfg.clip, 1.0 + cfg.clip);
        const double s1 = r * ad[i];
        const double s2 = rc * ad[i];
        policy_loss += -std::min(s1, s2);
        if (s1 <= s2) dlogp[i] = -ad[i] * r / bs;
        if (std::abs(r - 1.0) > cfg.clip) ++clipped;
      }
      policy_loss /= bs;

      // value loss on the critic head
      const Eigen::MatrixXd v = ac.critic.forward_ws(co, critic_ws).cast<double>();
      const Eigen::VectorXd verr = v.row(0).transpose() - rt;
      const double value_loss = 0.5 * verr.squaredNorm() / bs;

      const double entropy =
          log_sigma_sum + 0.5 * act_dim * std::log(2.0 * M_PI * std::exp(1.0));

      // backward
      actor_grads.set_zero();
      critic_grads.set_zero();
      Eigen::MatrixXf dmu_f(act_dim, bs);
      Eigen::VectorXd dlogstd = Eigen::VectorXd::Zero(act_dim);
      for (int i = 0; i < bs; ++i) {
        for (int d = 0; d < act_dim; ++d) {
          // dlogp/dmu = z / sigma ; dlogp/dlogstd = z^2 - 1
          dmu_f(d, i) = static_cast<float>(dlogp[i] * z(d, i) / sigma[d]);
          dlogstd[d] += dlogp[i] * (z(d, i) * z(d, i) - 1.0);
        }
      }
      dlogstd.array() -= cfg.entropy_coef;  // d(-c_e * H)/dlogstd = -c_e per dim
      ac.actor.backward(actor_ws, dmu_f, actor_grads);

      Eigen::MatrixXf dv(1, bs);
      for (int i = 0; i < bs; ++i)
        dv(0, i) = static_cast<float>(cfg.value_loss_coef * verr[i] / bs);
      ac.critic.backward(critic_ws, dv, critic_grads);

      // global gradient-norm clip
      const double gnorm2 = actor_grads.squared_norm() + critic_grads.squared_norm() +
                            dlogstd.squaredNorm();
      const double gnorm = std::sqrt(gnorm2);
      if (gnorm > cfg.max_grad_norm && gnorm > 0.0) {
        const double s = cfg.max_grad_norm / gnorm;
        actor_grads.scale(s);
        critic_grads.scale(s);
        dlogstd *= s;
      }

      Eigen::VectorXd params = ac.flatten();
      const Eigen::VectorXd grad = flatten_grads(actor_grads, dlogstd, critic_grads);
      if (!grad.allFinite() || !std::isfinite(policy_loss) || !std::isfinite(value_loss))
        throw std::runtime_error("ppo_update: non-finite loss or gradient");
      opt.step(params, grad, lr);
      ac.unflatten(params);

      kl_sum += kl_mean;
      clip_sum += static_cast<double>(clipped) / bs;
      pl_sum += policy_loss;
      vl_sum += value_loss;
      ent_sum += entropy;
      ++stat_batches;
    }
  }

  stats.mean_kl = kl_sum / stat_batches;
  stats.clip_fraction = clip_sum / stat_batches;
  stats.policy_loss = pl_sum / stat_batches;
  stats.value_loss = vl_sum / stat_batches;
  stats.entropy = ent_sum / stat_batches;
  stats.learning_rate = lr;
  return stats;
}

}  // namespace clamber::learn
