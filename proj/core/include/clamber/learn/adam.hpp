#pragma once

#include <Eigen/Dense>

namespace clamber::learn {

/// First-order adaptive-moment optimizer over a flat parameter vector.
class Adam {
 public:
  explicit Adam(int param_count, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : beta1_(beta1),
        beta2_(beta2),
        eps_(eps),
        m_(Eigen::VectorXd::Zero(param_count)),
        v_(Eigen::VectorXd::Zero(param_count)) {}

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, double lr) {
    ++t_;
    m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
    v_ = beta2_ * v_.array().matrix() + (1.0 - beta2_) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(beta1_, t_);
    const double c2 = 1.0 - std::pow(beta2_, t_);
    params.array() -=
        (lr / c1) * m_.array() / ((v_.array() / c2).sqrt() + eps_);
  }

 private:
  double beta1_, beta2_, eps_;
  long t_ = 0;
  Eigen::VectorXd m_, v_;
};

}  // namespace clamber::learn
