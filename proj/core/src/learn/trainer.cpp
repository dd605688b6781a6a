#include "clamber/learn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace clamber::learn {

namespace {

int resolve_workers(int configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("CLAMBER_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

/// Step a contiguous range of environments; results land in per-env slots.
template <typename Fn>
void parallel_over_envs(int num_envs, int workers, Fn&& fn) {
  if (workers <= 1) {
    for (int e = 0; e < num_envs; ++e) fn(e);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (num_envs + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(num_envs, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int e = lo; e < hi; ++e) fn(e);
    });
  }
  for (auto& t : pool) t.join();
}

double gaussian_log_prob(const Eigen::VectorXf& a, const Eigen::VectorXf& mu,
                         const Eigen::VectorXf& sigma) {
  double lp = 0.0;
  for (int d = 0; d < a.size(); ++d) {
    const double s = sigma[d];
    const double z = (a[d] - mu[d]) / s;
    lp += -0.5 * z * z - std::log(s) - 0.5 * std::log(2.0 * M_PI);
  }
  return lp;
}

}  // namespace

std::string layout_description(const ObservationLayout& layout) {
  std::ostringstream ss;
  ss << "skill=" << task::skill_name(layout.skill) << ";history=" << kHistoryLen
     << ";proprio=" << kProprioDim << ";task=" << layout.task_state_dim
     << ";map=" << layout.map_dim << ";cmd=" << layout.command_dim
     << ";extra=" << layout.extra_command_dim;
  return ss.str();
}

Checkpoint policy_checkpoint(const ActorCritic& ac, const RunningNormalizer& obs_norm,
                             const ObservationLayout& layout) {
  Checkpoint ckpt;
  ckpt.layout_hash = layout_hash(layout_description(layout));
  for (std::size_t l = 0; l < ac.actor.weights.size(); ++l) {
    ckpt.add_matrix("actor.W" + std::to_string(l), ac.actor.weights[l]);
    ckpt.add_vector("actor.b" + std::to_string(l), Eigen::VectorXf(ac.actor.biases[l]));
  }
  ckpt.add_vector("actor.log_std", Eigen::VectorXf(ac.log_std));
  for (std::size_t l = 0; l < ac.critic.weights.size(); ++l) {
    ckpt.add_matrix("critic.W" + std::to_string(l), ac.critic.weights[l]);
    ckpt.add_vector("critic.b" + std::to_string(l), Eigen::VectorXf(ac.critic.biases[l]));
  }
  ckpt.add_vector("obs_norm.mean", obs_norm.mean());
  ckpt.add_vector("obs_norm.var", obs_norm.variance());
  ckpt.add_scalar("obs_norm.count", obs_norm.count());
  return ckpt;
}

void restore_policy(const Checkpoint& ckpt, ActorCritic& ac, RunningNormalizer& obs_norm) {
  for (std::size_t l = 0; l < ac.actor.weights.size(); ++l) {
    ac.actor.weights[l] = ckpt.matrix("actor.W" + std::to_string(l));
    ac.actor.biases[l] = ckpt.vector("actor.b" + std::to_string(l));
  }
  ac.log_std = ckpt.vector("actor.log_std");
  for (std::size_t l = 0; l < ac.critic.weights.size(); ++l) {
    ac.critic.weights[l] = ckpt.matrix("critic.W" + std::to_string(l));
    ac.critic.biases[l] = ckpt.vector("critic.b" + std::to_string(l));
  }
  obs_norm.restore(ckpt.vector("obs_norm.mean").cast<double>(),
                   ckpt.vector("obs_norm.var").cast<double>(), ckpt.scalar("obs_norm.count"));
}

TrainResult train_skill(const env::EnvConfig& env_cfg, const sim::RobotModel& model,
                        const TrainConfig& cfg, std::uint64_t seed,
                        const std::function<void(const IterationLog&)>& on_iteration) {
  cfg.ppo.validate();
  const int workers = resolve_workers(cfg.num_threads);
  const int E = cfg.num_envs;
  const int T = cfg.steps_per_env;

  std::vector<std::unique_ptr<env::PlanarEnv>> envs;
  envs.reserve(E);
  for (int e = 0; e < E; ++e)
    envs.push_back(std::make_unique<env::PlanarEnv>(env_cfg, model, seed, 1000 + e));

  const ObservationLayout layout = envs[0]->layout();
  const int obs_dim = layout.actor_dim();
  const int cobs_dim = layout.critic_dim();
  const int act_dim = sim::kNumJoints;

  PolicySpec spec;
  spec.hidden = cfg.hidden;
  spec.input_dim = obs_dim;
  spec.critic_input_dim = cobs_dim;
  spec.output_dim = act_dim;

  Rng init_rng(seed, 1);
  ActorCritic ac = ActorCritic::create(spec, init_rng);
  Adam opt(ac.param_count());
  RunningNormalizer obs_norm(cobs_dim);
  Rng action_rng(seed, 2);
  Rng update_rng(seed, 3);

  const bool use_rnd = env_cfg.profile == reward::TaskRewardProfile::kRnd;
  std::unique_ptr<RndModule> rnd;
  if (use_rnd) {
    Rng rnd_rng(seed, 4);
    rnd = std::make_unique<RndModule>(obs_dim, rnd_rng);
  }

  const bool augment = cfg.symmetry_augmentation && task::is_maneuver(env_cfg.skill);
  const std::vector<int> obs_mirror = layout.mirror_permutation();
  const std::vector<int> cobs_mirror = layout.critic_mirror_permutation();
  std::vector<int> act_mirror(act_dim);
  {
    sim::JointVec probe{};
    for (int j = 0; j < act_dim; ++j) probe[j] = j;
    const sim::JointVec mirrored = mirror_action(probe);
    for (int j = 0; j < act_dim; ++j) act_mirror[j] = static_cast<int>(mirrored[j]);
  }
  std::vector<int> cobs_sym = cobs_mirror;  // normalizer symmetrization permutation

  double lr = cfg.ppo.learning_rate;
  TrainResult result{std::move(ac), std::move(obs_norm), {}, layout};
  const double dt = env_cfg.sim.control_dt;

  RolloutBuffer buffer(E, T, obs_dim, cobs_dim, act_dim);
  Eigen::MatrixXf raw_obs(obs_dim, E), raw_cobs(cobs_dim, E);
  Eigen::MatrixXf norm_obs(obs_dim, E), norm_cobs(cobs_dim, E);
  std::vector<env::EnvStepResult> step_results(E);
  std::vector<sim::JointVec> actions(E);

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    buffer.clear();
    double task_reward_sum = 0.0, total_reward_sum = 0.0;
    long episode_count = 0, success_count = 0;
    long episode_len_sum = 0;

    for (int t = 0; t < T; ++t) {
      for (int e = 0; e < E; ++e) {
        raw_obs.col(e) = envs[e]->actor_observation();
        raw_cobs.col(e) = envs[e]->critic_observation();
      }
      // canonical-order statistics update, then normalize with the same stats
      for (int e = 0; e < E; ++e) result.obs_norm.update(raw_cobs.col(e));
      if (augment) result.obs_norm.symmetrize(cobs_sym);
      for (int e = 0; e < E; ++e) {
        norm_obs.col(e) = result.obs_norm.normalize_head(raw_obs.col(e));
        norm_cobs.col(e) = result.obs_norm.normalize(raw_cobs.col(e));
      }

      const Eigen::MatrixXf mu = result.policy.actor.forward(norm_obs);
      const Eigen::VectorXf sigma = result.policy.log_std.array().exp();
      const Eigen::VectorXf values = result.policy.value(norm_cobs);

      Eigen::MatrixXf acts(act_dim, E);
      for (int e = 0; e < E; ++e)
        for (int d = 0; d < act_dim; ++d)
          acts(d, e) = mu(d, e) + sigma[d] * static_cast<float>(action_rng.gaussian());

      for (int e = 0; e < E; ++e)
        for (int d = 0; d < act_dim; ++d) actions[e][d] = acts(d, e);

      parallel_over_envs(E, workers, [&](int e) { step_results[e] = envs[e]->step(actions[e]); });

      // RND intrinsic bonus, canonical order (running stats areorder-sensitive)
      Eigen::VectorXd intrinsic = Eigen::VectorXd::Zero(E);
      if (use_rnd) {
        const double w_int =
            cfg.rnd_intrinsic_coef *
            reward::maneuver_weights(env_cfg.profile).get("rnd_intrinsic");
        for (int e = 0; e < E; ++e) intrinsic[e] = w_int * rnd->bonus(norm_obs.col(e));
      }

      // bootstrap values for timeout terminations, then reset finished envs
      Eigen::VectorXd bootstraps = Eigen::VectorXd::Zero(E);
      for (int e = 0; e < E; ++e) {
        const auto& sr = step_results[e];
        if (sr.done && sr.timeout) {
          const Eigen::VectorXf term_cobs =
              result.obs_norm.normalize(envs[e]->critic_observation());
          bootstraps[e] = static_cast<double>(result.policy.value(term_cobs)[0]);
        }
      }

      for (int e = 0; e < E; ++e) {
        const auto& sr = step_results[e];
        double task_term = 0.0;
        for (const auto& entry : sr.breakdown.entries)
          if (entry.name.rfind("ratchet_", 0) == 0 || entry.name.rfind("baseline_", 0) == 0)
            task_term += entry.weighted;
        task_reward_sum += task_term;
        total_reward_sum += sr.breakdown.total;

        const double reward = (sr.breakdown.total + intrinsic[e]) * dt;
        const Eigen::VectorXf a = acts.col(e);
        const Eigen::VectorXf m = mu.col(e);
        buffer.set_step(t, e, norm_obs.col(e), norm_cobs.col(e), a, m, sigma,
                        gaussian_log_prob(a, m, sigma), values[e], reward, sr.done, sr.timeout,
                        bootstraps[e]);

        if (sr.done) {
          ++episode_count;
          episode_len_sum += envs[e]->episode_step();
          const bool success = task::is_maneuver(env_cfg.skill)
                                   ? envs[e]->success_latched()
                                   : !envs[e]->context().terminated;
          if (success) ++success_count;
          envs[e]->reset();
        }
      }
    }

    for (int e = 0; e < E; ++e) {
      const Eigen::VectorXf cobs = result.obs_norm.normalize(envs[e]->critic_observation());
      buffer.last_values[e] = static_cast<double>(result.policy.value(cobs)[0]);
    }

    const GaeResult gae = compute_gae(buffer, cfg.ppo.gamma, cfg.ppo.lam);
    const UpdateStats stats =
        ppo_update(result.policy, opt, buffer, gae, cfg.ppo, lr, update_rng,
                   augment ? &obs_mirror : nullptr, augment ? &cobs_mirror : nullptr,
                   augment ? &act_mirror : nullptr);

    // keep exploration noise in a sane band
    for (int d = 0; d < act_dim; ++d)
      result.policy.log_std[d] = std::clamp(result.policy.log_std[d], -5.0f, 2.0f);

    if (use_rnd) rnd->update(buffer.obs);

    IterationLog log;
    log.iteration = iter;
    log.mean_task_reward = task_reward_sum / (E * T);
    log.success_rate = episode_count > 0
                           ? static_cast<double>(success_count) / episode_count
                           : 0.0;
    log.mean_episode_len =
        episode_count > 0 ? static_cast<double>(episode_len_sum) / episode_count : 0.0;
    log.kl = stats.mean_kl;
    log.clip_fraction = stats.clip_fraction;
    log.learning_rate = lr;
    log.mean_total_reward = total_reward_sum / (E * T);
    result.curve.push_back(log);
    if (on_iteration) on_iteration(log);
  }
  return result;
}

EvalEpisode evaluate_episode(const ActorCritic& ac, const RunningNormalizer& obs_norm,
                             const env::EnvConfig& env_cfg, const sim::RobotModel& model,
                             std::uint64_t seed, std::uint64_t stream) {
  env::PlanarEnv e(env_cfg, model, seed, stream);
  EvalEpisode ep;
  for (int t = 0; t < env_cfg.episode_len; ++t) {
    const Eigen::VectorXf obs = obs_norm.normalize_head(e.actor_observation());
    const Eigen::VectorXf mu = ac.actor.forward(obs);
    sim::JointVec action{};
    for (int d = 0; d < sim::kNumJoints; ++d) action[d] = mu[d];
    const auto sr = e.step(action);
    ep.total_reward += sr.breakdown.total;
    if (sr.done) break;
  }
  ep.success = task::is_maneuver(env_cfg.skill) ? e.success_latched() : !e.context().terminated;
  ep.peak_force = e.episode_peak_force();
  ep.length = e.episode_step();
  return ep;
}

}  // namespace clamber::learn
