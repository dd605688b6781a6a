#include "clamber/learn/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace clamber::learn {

template <typename T>
void orthogonal_init(Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& w, Rng& rng,
                     double gain) {
  const int rows = static_cast<int>(w.rows());
  const int cols = static_cast<int>(w.cols());
  // QR of a Gaussian matrix, sign-fixed by the diagonal of R
  Eigen::MatrixXd a(std::max(rows, cols), std::min(rows, cols));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXd r = qr.matrixQR().topRows(a.cols()).template triangularView<Eigen::Upper>();
  for (int j = 0; j < a.cols(); ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  Eigen::MatrixXd m = (rows >= cols) ? q : Eigen::MatrixXd(q.transpose());
  w = (gain * m).cast<T>();
}

template void orthogonal_init<float>(Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic>&,
                                     Rng&, double);
template void orthogonal_init<double>(Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>&,
                                      Rng&, double);

namespace {

template <typename T>
inline T elu(T x) {
  return x > T(0) ? x : std::expm1(x);
}

}  // namespace

template <typename T>
Mlp<T> Mlp<T>::create(const std::vector<int>& sizes, Rng& rng, double final_gain) {
  if (sizes.size() < 2) throw std::invalid_argument("Mlp needs at least input and output sizes");
  Mlp net;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    Mat w(sizes[l + 1], sizes[l]);
    const bool last = (l + 2 == sizes.size());
    orthogonal_init(w, rng, last ? final_gain : std::sqrt(2.0));
    net.weights.push_back(std::move(w));
    net.biases.push_back(Vec::Zero(sizes[l + 1]));
  }
  return net;
}

template <typename T>
typename Mlp<T>::Mat Mlp<T>::forward(const Mat& x) const {
  Mat h = x;
  for (int l = 0; l < num_layers(); ++l) {
    Mat z = (weights[l] * h).colwise() + biases[l];
    if (l + 1 < num_layers()) z = z.unaryExpr([](T v) { return elu(v); });
    h = std::move(z);
  }
  return h;
}

template <typename T>
typename Mlp<T>::Mat Mlp<T>::forward_ws(const Mat& x, Workspace& ws) const {
  ws.activations.assign(1, x);
  for (int l = 0; l < num_layers(); ++l) {
    Mat z = (weights[l] * ws.activations.back()).colwise() + biases[l];
    if (l + 1 < num_layers()) z = z.unaryExpr([](T v) { return elu(v); });
    ws.activations.push_back(std::move(z));
  }
  return ws.activations.back();
}

template <typename T>
void Mlp<T>::Grads::resize_like(const Mlp& net) {
  d_weights.resize(net.weights.size());
  d_biases.resize(net.biases.size());
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    d_weights[l].setZero(net.weights[l].rows(), net.weights[l].cols());
    d_biases[l].setZero(net.biases[l].size());
  }
}

template <typename T>
void Mlp<T>::Grads::set_zero() {
  for (auto& m : d_weights) m.setZero();
  for (auto& v : d_biases) v.setZero();
}

template <typename T>
double Mlp<T>::Grads::squared_norm() const {
  double s = 0.0;
  for (const auto& m : d_weights) s += static_cast<double>(m.squaredNorm());
  for (const auto& v : d_biases) s += static_cast<double>(v.squaredNorm());
  return s;
}

template <typename T>
void Mlp<T>::Grads::scale(double s) {
  for (auto& m : d_weights) m *= T(s);
  for (auto& v : d_biases) v *= T(s);
}

template <typename T>
typename Mlp<T>::Mat Mlp<T>::backward(const Workspace& ws, const Mat& d_output,
                                      Grads& grads) const {
  if (grads.d_weights.size() != weights.size()) grads.resize_like(*this);
  Mat delta = d_output;
  for (int l = num_layers() - 1; l >= 0; --l) {
    if (l + 1 < num_layers()) {
      // d(elu)/dz = 1 for z > 0, elu(z) + 1 otherwise; activations store elu(z)
      delta.array() *=
          ws.activations[l + 1].unaryExpr([](T a) { return a > T(0) ? T(1) : a + T(1); }).array();
    }
    grads.d_weights[l].noalias() += delta * ws.activations[l].transpose();
    grads.d_biases[l].noalias() += delta.rowwise().sum();
    if (l > 0) delta = (weights[l].transpose() * delta).eval();
  }
  return weights[0].transpose() * delta;
}

template <typename T>
int Mlp<T>::param_count() const {
  int n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l)
    n += static_cast<int>(weights[l].size() + biases[l].size());
  return n;
}

template <typename T>
Eigen::VectorXd Mlp<T>::flatten() const {
  Eigen::VectorXd flat(param_count());
  int k = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    for (int i = 0; i < weights[l].rows(); ++i)
      for (int j = 0; j < weights[l].cols(); ++j) flat[k++] = static_cast<double>(weights[l](i, j));
    for (int i = 0; i < biases[l].size(); ++i) flat[k++] = static_cast<double>(biases[l][i]);
  }
  return flat;
}

template <typename T>
void Mlp<T>::unflatten(const Eigen::VectorXd& flat) {
  if (flat.size() != param_count()) throw std::invalid_argument("Mlp::unflatten: size mismatch");
  int k = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    for (int i = 0; i < weights[l].rows(); ++i)
      for (int j = 0; j < weights[l].cols(); ++j) weights[l](i, j) = static_cast<T>(flat[k++]);
    for (int i = 0; i < biases[l].size(); ++i) biases[l][i] = static_cast<T>(flat[k++]);
  }
}

template struct Mlp<float>;
template struct Mlp<double>;

}  // namespace clamber::learn
