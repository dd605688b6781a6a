#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace clamber::learn {

/// Versioned binary tensor container: magic "CLMB", format version, a
/// layout hash guarding against mismatched readers, then named row-major
/// little-endian float32 tensors with shape metadata.
struct Checkpoint {
  struct Tensor {
    std::string name;
    std::vector<std::uint32_t> shape;
    std::vector<float> data;  // row-major
  };
  std::uint64_t layout_hash = 0;
  std::vector<Tensor> tensors;

  void add_matrix(const std::string& name, const Eigen::MatrixXf& m);
  void add_vector(const std::string& name, const Eigen::VectorXf& v);
  void add_vector(const std::string& name, const Eigen::VectorXd& v);
  void add_scalar(const std::string& name, double v);

  const Tensor& find(const std::string& name) const;  // throws if missing
  bool has(const std::string& name) const;
  Eigen::MatrixXf matrix(const std::string& name) const;
  Eigen::VectorXf vector(const std::string& name) const;
  double scalar(const std::string& name) const;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);  // throws on bad magic/version

/// FNV-1a of the layout description string (observation layout identity).
std::uint64_t layout_hash(const std::string& description);

}  // namespace clamber::learn
