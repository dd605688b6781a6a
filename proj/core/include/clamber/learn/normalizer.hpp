#pragma once

#include <Eigen/Dense>
#include <vector>

namespace clamber::learn {

/// Running per-channel mean/variance (Welford) with +-clip standard-score
/// output. Updates are applied in the caller's canonical order so parallel
/// rollouts stay reproducible.
class RunningNormalizer {
 public:
  explicit RunningNormalizer(int dim, double clip = 10.0);

  void update(const Eigen::Ref<const Eigen::VectorXf>& x);
  Eigen::VectorXf normalize(const Eigen::Ref<const Eigen::VectorXf>& x) const;

  /// Normalize a prefix slice with the leading channels' statistics (the
  /// actor observation is the head of the critic observation; stats are
  /// shared between them).
  Eigen::VectorXf normalize_head(const Eigen::Ref<const Eigen::VectorXf>& x) const;

  /// Average the statistics of mirrored channel pairs so that
  /// normalize(mirror(x)) == mirror(normalize(x)) holds exactly.
  void symmetrize(const std::vector<int>& mirror_permutation);

  int dim() const { return static_cast<int>(mean_.size()); }
  double count() const { return count_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  Eigen::VectorXd variance() const;

  void restore(const Eigen::VectorXd& mean, const Eigen::VectorXd& variance, double count);

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd m2_;
  double count_ = 0.0;
  double clip_;
};

}  // namespace clamber::learn
