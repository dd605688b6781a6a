#include "clamber/learn/normalizer.hpp"

#include <cmath>
#include <stdexcept>

namespace clamber::learn {

RunningNormalizer::RunningNormalizer(int dim, double clip)
    : mean_(Eigen::VectorXd::Zero(dim)), m2_(Eigen::VectorXd::Zero(dim)), clip_(clip) {}

void RunningNormalizer::update(const Eigen::Ref<const Eigen::VectorXf>& x) {
  if (x.size() != mean_.size()) throw std::invalid_argument("normalizer dim mismatch");
  count_ += 1.0;
  const Eigen::VectorXd xd = x.cast<double>();
  const Eigen::VectorXd delta = xd - mean_;
  mean_ += delta / count_;
  m2_ += delta.cwiseProduct(xd - mean_);
}

Eigen::VectorXd RunningNormalizer::variance() const {
  if (count_ < 2.0) return Eigen::VectorXd::Ones(mean_.size());
  return (m2_ / count_).cwiseMax(1e-8);
}

Eigen::VectorXf RunningNormalizer::normalize(const Eigen::Ref<const Eigen::VectorXf>& x) const {
  if (count_ < 2.0) return x;
  const Eigen::VectorXd stddev = variance().cwiseSqrt();
  Eigen::VectorXd out = (x.cast<double>() - mean_).cwiseQuotient(stddev);
  out = out.cwiseMax(-clip_).cwiseMin(clip_);
  return out.cast<float>();
}

Eigen::VectorXf RunningNormalizer::normalize_head(
    const Eigen::Ref<const Eigen::VectorXf>& x) const {
  if (x.size() > mean_.size())
    throw std::invalid_argument("normalize_head: slice larger than statistics");
  if (count_ < 2.0) return x;
  const int d = static_cast<int>(x.size());
  const Eigen::VectorXd stddev = variance().head(d).cwiseSqrt();
  Eigen::VectorXd out = (x.cast<double>() - mean_.head(d)).cwiseQuotient(stddev);
  out = out.cwiseMax(-clip_).cwiseMin(clip_);
  return out.cast<float>();
}

void RunningNormalizer::symmetrize(const std::vector<int>& mirror_permutation) {
  if (static_cast<int>(mirror_permutation.size()) != mean_.size())
    throw std::invalid_argument("normalizer symmetrize: permutation size mismatch");
  Eigen::VectorXd mean2 = mean_, m22 = m2_;
  for (int i = 0; i < mean_.size(); ++i) {
    const int j = mirror_permutation[i];
    mean2[i] = 0.5 * (mean_[i] + mean_[j]);
    m22[i] = 0.5 * (m2_[i] + m2_[j]);
  }
  mean_ = mean2;
  m2_ = m22;
}

void RunningNormalizer::restore(const Eigen::VectorXd& mean, const Eigen::VectorXd& variance,
                                double count) {
  if (mean.size() != mean_.size() || variance.size() != mean_.size())
    throw std::invalid_argument("normalizer restore: dim mismatch");
  mean_ = mean;
  m2_ = variance * std::max(count, 1.0);
  count_ = count;
}

}  // namespace clamber::learn
