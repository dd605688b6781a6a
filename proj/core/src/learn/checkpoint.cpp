#include "clamber/learn/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace clamber::learn {

namespace {

constexpr char kMagic[4] = {'C', 'L', 'M', 'B'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("checkpoint truncated");
  return v;
}

}  // namespace

void Checkpoint::add_matrix(const std::string& name, const Eigen::MatrixXf& m) {
  Tensor t;
  t.name = name;
  t.shape = {static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols())};
  t.data.resize(m.size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.data[i * m.cols() + j] = m(i, j);
  tensors.push_back(std::move(t));
}

void Checkpoint::add_vector(const std::string& name, const Eigen::VectorXf& v) {
  Tensor t;
  t.name = name;
  t.shape = {static_cast<std::uint32_t>(v.size())};
  t.data.assign(v.data(), v.data() + v.size());
  tensors.push_back(std::move(t));
}

void Checkpoint::add_vector(const std::string& name, const Eigen::VectorXd& v) {
  add_vector(name, Eigen::VectorXf(v.cast<float>()));
}

void Checkpoint::add_scalar(const std::string& name, double v) {
  Tensor t;
  t.name = name;
  t.shape = {1};
  t.data = {static_cast<float>(v)};
  tensors.push_back(std::move(t));
}

const Checkpoint::Tensor& Checkpoint::find(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return t;
  throw std::out_of_range("checkpoint tensor not found: " + name);
}

bool Checkpoint::has(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return true;
  return false;
}

Eigen::MatrixXf Checkpoint::matrix(const std::string& name) const {
  const Tensor& t = find(name);
  if (t.shape.size() != 2) throw std::runtime_error("tensor is not a matrix: " + name);
  Eigen::MatrixXf m(t.shape[0], t.shape[1]);
  for (std::uint32_t i = 0; i < t.shape[0]; ++i)
    for (std::uint32_t j = 0; j < t.shape[1]; ++j) m(i, j) = t.data[i * t.shape[1] + j];
  return m;
}

Eigen::VectorXf Checkpoint::vector(const std::string& name) const {
  const Tensor& t = find(name);
  if (t.shape.size() != 1) throw std::runtime_error("tensor is not a vector: " + name);
  return Eigen::Map<const Eigen::VectorXf>(t.data.data(), t.data.size());
}

double Checkpoint::scalar(const std::string& name) const {
  const Tensor& t = find(name);
  if (t.data.size() != 1) throw std::runtime_error("tensor is not a scalar: " + name);
  return t.data[0];
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out.write(kMagic, 4);
  write_pod(out, kVersion);
  write_pod(out, ckpt.layout_hash);
  write_pod(out, static_cast<std::uint32_t>(ckpt.tensors.size()));
  for (const auto& t : ckpt.tensors) {
    write_pod(out, static_cast<std::uint32_t>(t.name.size()));
    out.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
    write_pod(out, static_cast<std::uint32_t>(t.shape.size()));
    for (std::uint32_t d : t.shape) write_pod(out, d);
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size() * sizeof(float)));
  }
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("bad checkpoint magic in " + path);
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kVersion)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  Checkpoint ckpt;
  ckpt.layout_hash = read_pod<std::uint64_t>(in);
  const auto count = read_pod<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < count; ++i) {
    Checkpoint::Tensor t;
    const auto name_len = read_pod<std::uint32_t>(in);
    t.name.resize(name_len);
    in.read(t.name.data(), name_len);
    const auto rank = read_pod<std::uint32_t>(in);
    std::uint64_t total = 1;
    for (std::uint32_t d = 0; d < rank; ++d) {
      t.shape.push_back(read_pod<std::uint32_t>(in));
      total *= t.shape.back();
    }
    t.data.resize(total);
    in.read(reinterpret_cast<char*>(t.data.data()),
            static_cast<std::streamsize>(total * sizeof(float)));
    if (!in) throw std::runtime_error("checkpoint truncated: " + path);
    ckpt.tensors.push_back(std::move(t));
  }
  return ckpt;
}

std::uint64_t layout_hash(const std::string& description) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : description) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace clamber::learn
