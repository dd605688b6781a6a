#pragma once

#include <cmath>
#include <cstdint>

namespace clamber {

/// Deterministic xoshiro256++ PRNG. Self-contained so that streams are
/// bit-stable across standard libraries and build configurations; every
/// stochastic component in the project draws from one of these, keyed by
/// (seed, stream) so parallel environments stay independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    // splitmix64 expansion of the (seed, stream) pair into the state.
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& s : state_) s = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Standard normal via Box-Muller (first branch only, no cached spare).
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  /// Normal truncated to [lo, hi] by resampling (bounded-support noise).
  double truncated_gaussian(double mean, double stddev, double lo, double hi) {
    for (int i = 0; i < 64; ++i) {
      const double v = mean + stddev * gaussian();
      if (v >= lo && v <= hi) return v;
    }
    return mean < lo ? lo : (mean > hi ? hi : mean);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Independent child stream (e.g. one per environment).
  Rng child(std::uint64_t stream) const {
    Rng r(state_[0] ^ state_[2], stream);
    return r;
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t state_[4];
};

}  // namespace clamber
