#include "clamber/learn/rnd.hpp"

#include <cmath>

namespace clamber::learn {

RndModule::RndModule(int obs_dim, Rng& rng, int feature_dim, double lr)
    : target_(Mlp<float>::create({obs_dim, 64, 64, feature_dim}, rng, 1.0)),
      predictor_(Mlp<float>::create({obs_dim, 64, 64, feature_dim}, rng, 1.0)),
      opt_(0),
      lr_(lr) {
  opt_ = Adam(predictor_.param_count());
}

double RndModule::raw_error(const Eigen::VectorXf& obs) const {
  const Eigen::VectorXf t = target_.forward(obs);
  const Eigen::VectorXf p = predictor_.forward(obs);
  return static_cast<double>((t - p).squaredNorm());
}

double RndModule::bonus(const Eigen::VectorXf& obs) {
  const double err = raw_error(obs);
  count_ += 1.0;
  const double delta = err - running_mean_;
  running_mean_ += delta / count_;
  running_m2_ += delta * (err - running_mean_);
  const double stddev = count_ > 1.0 ? std::sqrt(std::max(running_m2_ / count_, 1e-12)) : 1.0;
  return err / stddev;
}

void RndModule::update(const Eigen::MatrixXf& obs_batch) {
  const Eigen::MatrixXf t = target_.forward(obs_batch);
  Mlp<float>::Workspace ws;
  const Eigen::MatrixXf p = predictor_.forward_ws(obs_batch, ws);
  const int bs = static_cast<int>(obs_batch.cols());
  const Eigen::MatrixXf d_out = (p - t) * (2.0f / bs);
  Mlp<float>::Grads grads;
  grads.resize_like(predictor_);
  predictor_.backward(ws, d_out, grads);

  Eigen::VectorXd params = predictor_.flatten();
  Eigen::VectorXd flat(params.size());
  int k = 0;
  for (std::size_t l = 0; l < grads.d_weights.size(); ++l) {
    for (int i = 0; i < grads.d_weights[l].rows(); ++i)
      for (int j = 0; j < grads.d_weights[l].cols(); ++j)
        flat[k++] = static_cast<double>(grads.d_weights[l](i, j));
    for (int i = 0; i < grads.d_biases[l].size(); ++i)
      flat[k++] = static_cast<double>(grads.d_biases[l][i]);
  }
  opt_.step(params, flat, lr_);
  predictor_.unflatten(params);
}

}  // namespace clamber::learn
