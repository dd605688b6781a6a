#pragma once

#include <Eigen/Dense>
#include <vector>

#include "clamber/common/rng.hpp"

namespace clamber::learn {

/// Column-batched MLP with ELU hidden activations and a linear output
/// layer. Inputs are (dim x batch) matrices. Templated on the scalar so
/// training runs in float while gradient-check instantiations use double.
template <typename T>
struct Mlp {
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

  std::vector<Mat> weights;  // layer l: (out_l x in_l)
  std::vector<Vec> biases;

  /// Orthogonally initialized network. `sizes` runs input, hidden..., output.
  /// Hidden layers use gain sqrt(2); the output layer uses `final_gain`.
  static Mlp create(const std::vector<int>& sizes, Rng& rng, double final_gain = 0.01);

  int input_dim() const { return static_cast<int>(weights.front().cols()); }
  int output_dim() const { return static_cast<int>(weights.back().rows()); }
  int num_layers() const { return static_cast<int>(weights.size()); }

  Mat forward(const Mat& x) const;

  /// Forward pass keeping per-layer activations for backprop.
  struct Workspace {
    std::vector<Mat> activations;  // activations[0] = input, .. [L] = output
  };
  Mat forward_ws(const Mat& x, Workspace& ws) const;

  struct Grads {
    std::vector<Mat> d_weights;
    std::vector<Vec> d_biases;
    void resize_like(const Mlp& net);
    void set_zero();
    double squared_norm() const;
    void scale(double s);
  };

  /// Backpropagate d(loss)/d(output); accumulates parameter gradients into
  /// `grads` and returns d(loss)/d(input).
  Mat backward(const Workspace& ws, const Mat& d_output, Grads& grads) const;

  // Flat parameter views (checkpointing, optimizers, finite differences).
  int param_count() const;
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& flat);
};

extern template struct Mlp<float>;
extern template struct Mlp<double>;

/// Orthogonal (QR-based) initialization of a single matrix, gain-scaled.
template <typename T>
void orthogonal_init(Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& w, Rng& rng, double gain);

}  // namespace clamber::learn
