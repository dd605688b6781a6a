#pragma once

#include <Eigen/Dense>

#include "clamber/common/rng.hpp"
#include "clamber/learn/adam.hpp"
#include "clamber/learn/mlp.hpp"

namespace clamber::learn {

/// Random-network-distillation intrinsic bonus: squared prediction error of
/// a trained predictor against a frozen random target, normalized by the
/// running bonus standard deviation.
class RndModule {
 public:
  RndModule(int obs_dim, Rng& rng, int feature_dim = 16, double lr = 1e-3);

  double bonus(const Eigen::VectorXf& obs);            // >= 0, updates the running std
  double raw_error(const Eigen::VectorXf& obs) const;  // unnormalized squared error
  void update(const Eigen::MatrixXf& obs_batch);       // regress predictor on visited obs

  const Mlp<float>& predictor() const { return predictor_; }
  const Mlp<float>& target() const { return target_; }
  Mlp<float>& mutable_predictor() { return predictor_; }

 private:
  Mlp<float> target_;  // frozen
  Mlp<float> predictor_;
  Adam opt_;
  double lr_;
  double running_mean_ = 0.0, running_m2_ = 0.0, count_ = 0.0;
};

}  // namespace clamber::learn
