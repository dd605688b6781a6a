#include "clamber/distill/distill.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace clamber::distill {

using task::SkillId;

const Teacher& TeacherLibrary::teacher(SkillId skill) const {
  const auto it = teachers.find(skill);
  if (it == teachers.end())
    throw std::out_of_range(std::string("no teacher for skill ") + task::skill_name(skill));
  return it->second;
}

void DistillDataset::append(const Eigen::VectorXf& o, const Eigen::VectorXf& label,
                            SkillId skill, int mix_id) {
  if (obs_dim == 0) obs_dim = static_cast<int>(o.size());
  if (o.size() != obs_dim || label.size() != action_dim)
    throw std::invalid_argument("dataset append: dimension mismatch");
  obs.insert(obs.end(), o.data(), o.data() + o.size());
  labels.insert(labels.end(), label.data(), label.data() + label.size());
  skill_ids.push_back(static_cast<std::uint8_t>(skill));
  mix_ids.push_back(static_cast<std::uint8_t>(mix_id));
}

namespace {

constexpr char kDatasetMagic[4] = {'C', 'L', 'D', 'S'};
constexpr std::uint32_t kDatasetVersion = 1;

template <typename T>
void write_pod(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("dataset file truncated");
  return v;
}

}  // namespace

void save_dataset(const DistillDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset: " + path);
  out.write(kDatasetMagic, 4);
  write_pod(out, kDatasetVersion);
  write_pod(out, static_cast<std::uint32_t>(ds.obs_dim));
  write_pod(out, static_cast<std::uint32_t>(ds.action_dim));
  write_pod(out, static_cast<std::uint64_t>(ds.size()));
  out.write(reinterpret_cast<const char*>(ds.obs.data()),
            static_cast<std::streamsize>(ds.obs.size() * sizeof(float)));
  out.write(reinterpret_cast<const char*>(ds.labels.data()),
            static_cast<std::streamsize>(ds.labels.size() * sizeof(float)));
  out.write(reinterpret_cast<const char*>(ds.skill_ids.data()),
            static_cast<std::streamsize>(ds.skill_ids.size()));
  out.write(reinterpret_cast<const char*>(ds.mix_ids.data()),
            static_cast<std::streamsize>(ds.mix_ids.size()));
}

DistillDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kDatasetMagic, 4) != 0)
    throw std::runtime_error("bad dataset magic: " + path);
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kDatasetVersion)
    throw std::runtime_error("unsupported dataset version " + std::to_string(version));
  DistillDataset ds;
  ds.obs_dim = static_cast<int>(read_pod<std::uint32_t>(in));
  ds.action_dim = static_cast<int>(read_pod<std::uint32_t>(in));
  const auto count = read_pod<std::uint64_t>(in);
  ds.obs.resize(count * ds.obs_dim);
  ds.labels.resize(count * ds.action_dim);
  ds.skill_ids.resize(count);
  ds.mix_ids.resize(count);
  in.read(reinterpret_cast<char*>(ds.obs.data()),
          static_cast<std::streamsize>(ds.obs.size() * sizeof(float)));
  in.read(reinterpret_cast<char*>(ds.labels.data()),
          static_cast<std::streamsize>(ds.labels.size() * sizeof(float)));
  in.read(reinterpret_cast<char*>(ds.skill_ids.data()),
          static_cast<std::streamsize>(ds.skill_ids.size()));
  in.read(reinterpret_cast<char*>(ds.mix_ids.data()),
          static_cast<std::streamsize>(ds.mix_ids.size()));
  if (!in) throw std::runtime_error("dataset file truncated: " + path);
  return ds;
}

SkillId select_teacher(const EnvMixSpec::Entry& entry, const sim::RobotState& state,
                       const sim::Terrain& terrain, double v_cmd, bool first_goal_latched) {
  if (entry.skills.empty()) throw std::invalid_argument("select_teacher: empty mix entry");
  if (entry.skills.size() == 1) return entry.skills[0];
  const SkillId second = entry.skills[1];
  if (first_goal_latched) return second;
  // terrain triggers: hand off once the platform edge is within the climb
  // initialization band
  if (second == SkillId::kClimbUp) {
    const double dist = terrain.edge_x - state.x;
    if (dist <= 0.35) return second;
  } else if (second == SkillId::kClimbDown) {
    const double dist = state.x - terrain.edge_x;
    if (dist >= 0.0 && dist <= 0.45) return second;
  }
  (void)v_cmd;
  return entry.skills[0];
}

double student_loss(const Eigen::VectorXf& student_action,
                    const Eigen::VectorXf& teacher_action) {
  if (student_action.size() != teacher_action.size())
    throw std::invalid_argument("student_loss: dimension mismatch");
  return static_cast<double>((student_action - teacher_action).squaredNorm()) /
         student_action.size();
}

StudentPolicy make_student(const DistillConfig& cfg, std::uint64_t seed) {
  StudentPolicy s{learn::Mlp<float>{}, learn::RunningNormalizer{1}, {}};
  s.layout = learn::ObservationLayout::unified();
  std::vector<int> sizes = {s.layout.actor_dim()};
  for (int h : cfg.student_hidden) sizes.push_back(h);
  sizes.push_back(sim::kNumJoints);
  Rng rng(seed, 77);
  s.net = learn::Mlp<float>::create(sizes, rng, 0.01);
  s.obs_norm = learn::RunningNormalizer(s.layout.actor_dim());
  return s;
}

namespace {

/// The unified observation is a superset of every teacher layout: slice the
/// teacher's channels back out of a raw unified observation.
Eigen::VectorXf extract_teacher_obs(const learn::ObservationLayout& unified,
                                    const learn::ObservationLayout& teacher,
                                    const Eigen::VectorXf& raw_unified) {
  Eigen::VectorXf out = Eigen::VectorXf::Zero(teacher.actor_dim());
  out.head(teacher.history_dim()) = raw_unified.head(unified.history_dim());
  if (teacher.task_state_dim > 0)
    out.segment(teacher.task_offset(), teacher.task_state_dim) =
        raw_unified.segment(unified.task_offset(), unified.task_state_dim);
  if (teacher.map_dim > 0)
    out.segment(teacher.map_offset(), teacher.map_dim) =
        raw_unified.segment(unified.map_offset(), unified.map_dim);
  if (teacher.command_dim > 0)
    out.segment(teacher.command_offset(), teacher.command_dim) =
        raw_unified.segment(unified.command_offset(), unified.command_dim);
  return out;
}

Eigen::VectorXf teacher_action_for(const Teacher& teacher,
                                   const learn::ObservationLayout& unified,
                                   const Eigen::VectorXf& raw_unified) {
  const Eigen::VectorXf tobs = extract_teacher_obs(unified, teacher.layout, raw_unified);
  return teacher.policy.actor.forward(teacher.obs_norm.normalize_head(tobs));
}

struct RolloutSink {
  DistillDataset* dataset = nullptr;
  double label_mse_sum = 0.0;
  long label_count = 0;
};

env::EnvConfig entry_env_config(const env::EnvConfig& base, const EnvMixSpec::Entry& entry,
                                bool broadened, double broadened_scale) {
  env::EnvConfig cfg = base;
  cfg.skill = entry.skills[0];
  cfg.episode_len = base.episode_len;
  cfg.terrain =
      entry.terrain.find("platform") != std::string::npos ? env::TerrainKind::kPlatform
                                                          : env::TerrainKind::kFlat;
  bool has_climb_down = false;
  for (SkillId s : entry.skills)
    if (s == SkillId::kClimbDown) has_climb_down = true;
  if (cfg.terrain == env::TerrainKind::kPlatform && !task::is_maneuver(cfg.skill)) {
    // locomotion leading into a climb: place the robot away from the edge
    if (has_climb_down) {
      cfg.pose.locomotion_x_min = cfg.platform_edge_x + 0.6;
      cfg.pose.locomotion_x_max = cfg.platform_edge_x + 1.0;
    } else {
      cfg.pose.locomotion_x_min = cfg.platform_edge_x - 1.2;
      cfg.pose.locomotion_x_max = cfg.platform_edge_x - 0.7;
    }
  }
  if (broadened) {
    cfg.pose.joint_perturbation =
        std::min(0.4, cfg.pose.joint_perturbation * broadened_scale);
    cfg.pose.pitch_perturbation *= broadened_scale;
  }
  return cfg;
}

/// Roll `steps` environment steps for one mix entry, driving the robot with
/// either the teachers (BC, with action noise) or the student (DAgger), and
/// appending (raw unified obs, teacher label) pairs.
template <typename ActionFn>
void rollout_entry(const EnvMixSpec::Entry& entry, int entry_idx, const env::EnvConfig& cfg,
                   const sim::RobotModel& model, const TeacherLibrary& teachers,
                   const learn::ObservationLayout& unified, int steps, std::uint64_t seed,
                   std::uint64_t stream, learn::RunningNormalizer* norm, RolloutSink& sink,
                   ActionFn&& action_for) {
  env::PlanarEnv e(cfg, model, seed, stream);
  bool first_latched = false;
  int episode_steps = 0;
  for (int t = 0; t < steps; ++t) {
    const SkillId active =
        select_teacher(entry, e.state(), e.terrain(), e.v_cmd(), first_latched);
    if (active != e.config().skill) e.switch_skill(active);

    const double trig_stand = active == SkillId::kStandUp ? 1.0 : 0.0;
    const double trig_lie = active == SkillId::kLieDown ? 1.0 : 0.0;
    const Eigen::VectorXf raw_unified = e.observation_for(unified, trig_stand, trig_lie);
    const Eigen::VectorXf label =
        teacher_action_for(teachers.teacher(active), unified, raw_unified);

    if (norm) norm->update(raw_unified);
    sink.dataset->append(raw_unified, label, active, entry_idx);

    const Eigen::VectorXf act = action_for(active, raw_unified, label);
    sink.label_mse_sum += student_loss(act, label);
    sink.label_count += 1;

    sim::JointVec action{};
    for (int d = 0; d < sim::kNumJoints; ++d) action[d] = act[d];
    const auto sr = e.step(action);
    if (task::is_maneuver(e.config().skill) && e.success_latched() &&
        e.config().skill == entry.skills[0])
      first_latched = true;
    ++episode_steps;
    if (sr.done || episode_steps >= cfg.episode_len) {
      e.reset();
      first_latched = false;
      episode_steps = 0;
    }
  }
}

void augment_dataset(DistillDataset& ds, const learn::ObservationLayout& unified) {
  const auto perm = unified.mirror_permutation();
  const std::size_t n = ds.size();
  for (std::size_t r = 0; r < n; ++r) {
    Eigen::VectorXf o(ds.obs_dim), l(ds.action_dim);
    for (int i = 0; i < ds.obs_dim; ++i) o[i] = ds.obs[r * ds.obs_dim + perm[i]];
    sim::JointVec a{};
    for (int d = 0; d < ds.action_dim; ++d) a[d] = ds.labels[r * ds.action_dim + d];
    const sim::JointVec ma = learn::mirror_action(a);
    for (int d = 0; d < ds.action_dim; ++d) l[d] = static_cast<float>(ma[d]);
    ds.append(o, l, static_cast<SkillId>(ds.skill_ids[r]), ds.mix_ids[r]);
  }
}

void fit_student(StudentPolicy& student, const DistillDataset& ds, const DistillConfig& cfg,
                 Rng& rng) {
  const int n = static_cast<int>(ds.size());
  if (n == 0) return;
  learn::Adam opt(student.net.param_count());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);
    for (int start = 0; start < n; start += cfg.minibatch) {
      const int bs = std::min(cfg.minibatch, n - start);
      Eigen::MatrixXf o(ds.obs_dim, bs), y(ds.action_dim, bs);
      for (int i = 0; i < bs; ++i) {
        const int r = order[start + i];
        Eigen::Map<const Eigen::VectorXf> obs(ds.obs.data() + r * ds.obs_dim, ds.obs_dim);
        o.col(i) = student.obs_norm.normalize(obs);
        y.col(i) = Eigen::Map<const Eigen::VectorXf>(ds.labels.data() + r * ds.action_dim,
                                                     ds.action_dim);
      }
      learn::Mlp<float>::Workspace ws;
      const Eigen::MatrixXf pred = student.net.forward_ws(o, ws);
      const Eigen::MatrixXf d_out = (pred - y) * (2.0f / (bs * ds.action_dim));
      learn::Mlp<float>::Grads grads;
      grads.resize_like(student.net);
      student.net.backward(ws, d_out, grads);
      const double gnorm = std::sqrt(grads.squared_norm());
      if (gnorm > cfg.max_grad_norm && gnorm > 0.0) grads.scale(cfg.max_grad_norm / gnorm);

      Eigen::VectorXd params = student.net.flatten();
      Eigen::VectorXd flat(params.size());
      int k = 0;
      for (std::size_t l = 0; l < grads.d_weights.size(); ++l) {
        for (int r = 0; r < grads.d_weights[l].rows(); ++r)
          for (int c = 0; c < grads.d_weights[l].cols(); ++c)
            flat[k++] = static_cast<double>(grads.d_weights[l](r, c));
        for (int r = 0; r < grads.d_biases[l].size(); ++r)
          flat[k++] = static_cast<double>(grads.d_biases[l][r]);
      }
      opt.step(params, flat, cfg.lr);
      student.net.unflatten(params);
    }
  }
}

}  // namespace

StudentPolicy bc_pretrain(const TeacherLibrary& teachers, const EnvMixSpec& mix,
                          const env::EnvConfig& base_env, const sim::RobotModel& model,
                          const DistillConfig& cfg, std::uint64_t seed,
                          DistillDataset* dataset_out) {
  mix.validate();
  StudentPolicy student = make_student(cfg, seed);
  DistillDataset dataset;
  dataset.obs_dim = student.layout.actor_dim();
  Rng rng(seed, 101);
  Rng fit_rng(seed, 102);

  for (int iter = 0; iter < cfg.bc_iterations; ++iter) {
    for (std::size_t entry_idx = 0; entry_idx < mix.entries.size(); ++entry_idx) {
      const auto& entry = mix.entries[entry_idx];
      const int steps =
          std::max(1, static_cast<int>(std::lround(cfg.steps_per_batch * entry.proportion)));
      const env::EnvConfig ecfg =
          entry_env_config(base_env, entry, /*broadened=*/true, cfg.broadened_init_scale);
      RolloutSink sink;
      sink.dataset = &dataset;
      Rng noise_rng(seed, 9000 + iter * 100 + entry_idx);
      rollout_entry(entry, static_cast<int>(entry_idx), ecfg, model, teachers, student.layout,
                    steps, seed, 2000 + iter * 100 + entry_idx, &student.obs_norm, sink,
                    [&](SkillId, const Eigen::VectorXf&, const Eigen::VectorXf& label) {
                      Eigen::VectorXf a = label;
                      for (int d = 0; d < a.size(); ++d)
                        a[d] += static_cast<float>(cfg.action_noise_std * noise_rng.gaussian());
                      return a;
                    });
    }
    if (cfg.symmetry_augmentation && iter + 1 == cfg.bc_iterations) {
      student.obs_norm.symmetrize(student.layout.mirror_permutation());
      augment_dataset(dataset, student.layout);
    }
    fit_student(student, dataset, cfg, fit_rng);
  }
  if (dataset_out) *dataset_out = std::move(dataset);
  return student;
}

double dagger_round(StudentPolicy& student, const TeacherLibrary& teachers,
                    const EnvMixSpec& mix, const env::EnvConfig& base_env,
                    const sim::RobotModel& model, const DistillConfig& cfg, std::uint64_t seed,
                    DistillDataset& dataset) {
  mix.validate();
  Rng fit_rng(seed, 103);
  RolloutSink sink;
  DistillDataset fresh;
  fresh.obs_dim = student.layout.actor_dim();
  sink.dataset = &fresh;

  for (std::size_t entry_idx = 0; entry_idx < mix.entries.size(); ++entry_idx) {
    const auto& entry = mix.entries[entry_idx];
    const int steps =
        std::max(1, static_cast<int>(std::lround(cfg.steps_per_batch * entry.proportion)));
    const env::EnvConfig ecfg =
        entry_env_config(base_env, entry, /*broadened=*/false, cfg.broadened_init_scale);
    rollout_entry(entry, static_cast<int>(entry_idx), ecfg, model, teachers, student.layout,
                  steps, seed, 3000 + entry_idx, &student.obs_norm, sink,
                  [&](SkillId, const Eigen::VectorXf& raw_obs, const Eigen::VectorXf&) {
                    return student.net.forward(student.obs_norm.normalize(raw_obs));
                  });
  }

  const double mse =
      sink.label_count > 0 ? sink.label_mse_sum / sink.label_count : 0.0;
  if (cfg.symmetry_augmentation) {
    student.obs_norm.symmetrize(student.layout.mirror_permutation());
    augment_dataset(fresh, student.layout);
  }
  // aggregate, then regress on everything collected so far
  for (std::size_t r = 0; r < fresh.size(); ++r) {
    Eigen::Map<const Eigen::VectorXf> o(fresh.obs.data() + r * fresh.obs_dim, fresh.obs_dim);
    Eigen::Map<const Eigen::VectorXf> l(fresh.labels.data() + r * fresh.action_dim,
                                        fresh.action_dim);
    dataset.append(o, l, static_cast<SkillId>(fresh.skill_ids[r]), fresh.mix_ids[r]);
  }
  fit_student(student, dataset, cfg, fit_rng);
  return mse;
}

StudentEval evaluate_student(const StudentPolicy& student, SkillId skill,
                             const env::EnvConfig& env_cfg, const sim::RobotModel& model,
                             int n_trials, std::uint64_t seed) {
  env::EnvConfig cfg = env_cfg;
  cfg.skill = skill;
  StudentEval ev;
  ev.trials = n_trials;
  std::vector<double> forces;
  int successes = 0;
  for (int trial = 0; trial < n_trials; ++trial) {
    env::PlanarEnv e(cfg, model, seed, 5000 + trial);
    for (int t = 0; t < cfg.episode_len; ++t) {
      const Eigen::VectorXf act = student_action(student, e);
      sim::JointVec action{};
      for (int d = 0; d < sim::kNumJoints; ++d) action[d] = act[d];
      if (e.step(action).done) break;
    }
    const bool success =
        task::is_maneuver(skill) ? e.success_latched() : !e.context().terminated;
    if (success) ++successes;
    forces.push_back(e.episode_peak_force());
  }
  ev.success_rate = static_cast<double>(successes) / n_trials;
  double mean = 0.0;
  for (double f : forces) mean += f;
  mean /= forces.size();
  double var = 0.0;
  for (double f : forces) var += (f - mean) * (f - mean);
  ev.mean_peak_force = mean;
  ev.std_peak_force = std::sqrt(var / forces.size());
  return ev;
}

Eigen::VectorXf student_action(const StudentPolicy& student, const env::PlanarEnv& e) {
  const SkillId active = e.config().skill;
  const double trig_stand = active == SkillId::kStandUp ? 1.0 : 0.0;
  const double trig_lie = active == SkillId::kLieDown ? 1.0 : 0.0;
  const Eigen::VectorXf raw = e.observation_for(student.layout, trig_stand, trig_lie);
  return student.net.forward(student.obs_norm.normalize(raw));
}

}  // namespace clamber::distill
