#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "clamber/distill/mix.hpp"
#include "clamber/env/environment.hpp"
#include "clamber/learn/trainer.hpp"

namespace clamber::distill {

/// One trained teacher: policy, observation statistics, layout, goal.
struct Teacher {
  learn::ActorCritic policy;
  learn::RunningNormalizer obs_norm{1};
  learn::ObservationLayout layout;
};

/// All six skills. Loadable from per-skill checkpoint files.
struct TeacherLibrary {
  std::map<task::SkillId, Teacher> teachers;

  bool complete() const { return teachers.size() == task::kNumSkills; }
  const Teacher& teacher(task::SkillId skill) const;  // throws if absent
};

struct DistillConfig {
  int bc_iterations = 4;
  int dagger_iterations = 16;
  int epochs = 40;            // regression epochs per iteration (paper-scale: 1500)
  int steps_per_batch = 4096; // rollout steps collected per iteration
  int steps_per_env = 400;
  int num_envs = 16;
  double lr = 3.0e-4;
  double action_noise_std = 0.1;
  std::vector<int> student_hidden = {256, 128};
  double max_grad_norm = 1.0;
  int minibatch = 512;
  bool symmetry_augmentation = true;
  double broadened_init_scale = 1.5;  // BC initial-state widening factor
  double teacher_failure_bound = 0.9; // max tolerated teacher failure rate per cell
};

struct StudentPolicy {
  learn::Mlp<float> net;
  learn::RunningNormalizer obs_norm{1};
  learn::ObservationLayout layout;  // unified
};

/// Aggregated (observation, label, skill, mix-entry) records plus file I/O
/// (versioned binary, magic "CLDS").
struct DistillDataset {
  int obs_dim = 0;
  int action_dim = sim::kNumJoints;
  std::vector<float> obs;     // row-major, count x obs_dim
  std::vector<float> labels;  // count x action_dim
  std::vector<std::uint8_t> skill_ids;
  std::vector<std::uint8_t> mix_ids;

  std::size_t size() const { return skill_ids.size(); }
  void append(const Eigen::VectorXf& o, const Eigen::VectorXf& label, task::SkillId skill,
              int mix_id);
};
void save_dataset(const DistillDataset& ds, const std::string& path);
DistillDataset load_dataset(const std::string& path);

/// Deterministic teacher-selection rule for a mix entry: the first skill
/// until its goal latches or the second skill's terrain trigger fires
/// (platform edge within climbing range), then the second.
task::SkillId select_teacher(const EnvMixSpec::Entry& entry, const sim::RobotState& state,
                             const sim::Terrain& terrain, double v_cmd,
                             bool first_goal_latched);

/// Mean squared error between action vectors.
double student_loss(const Eigen::VectorXf& student_action, const Eigen::VectorXf& teacher_action);

/// Behavior-cloning pretraining: rollouts under teacher control with action
/// noise and broadened initial states; regression on (student obs, teacher
/// action) pairs.
StudentPolicy bc_pretrain(const TeacherLibrary& teachers, const EnvMixSpec& mix,
                          const env::EnvConfig& base_env, const sim::RobotModel& model,
                          const DistillConfig& cfg, std::uint64_t seed,
                          DistillDataset* dataset_out = nullptr);

/// One DAgger round: rollouts under the student, labels from the selected
/// teacher at every visited state, aggregate and regress (with symmetry
/// augmentation). Returns the per-round mean label MSE before regression.
double dagger_round(StudentPolicy& student, const TeacherLibrary& teachers,
                    const EnvMixSpec& mix, const env::EnvConfig& base_env,
                    const sim::RobotModel& model, const DistillConfig& cfg, std::uint64_t seed,
                    DistillDataset& dataset);

struct StudentEval {
  double success_rate = 0.0;
  double mean_peak_force = 0.0;
  double std_peak_force = 0.0;
  int trials = 0;
};
StudentEval evaluate_student(const StudentPolicy& student, task::SkillId skill,
                             const env::EnvConfig& env_cfg, const sim::RobotModel& model,
                             int n_trials, std::uint64_t seed);

/// Student action for an environment state (unified observation).
Eigen::VectorXf student_action(const StudentPolicy& student, const env::PlanarEnv& e);

StudentPolicy make_student(const DistillConfig& cfg, std::uint64_t seed);

}  // namespace clamber::distill
