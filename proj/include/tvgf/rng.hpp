#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>

namespace tvgf::rng {

/// Generator pinned for reproducibility: substreams are derived with
/// splitmix64 mixing, uniforms come from mt19937_64 high bits, and normals
/// from the trigonometric Box-Muller transform. All three are fully
/// specified, so a (seed, stream) pair yields the same values on any
/// standard library.
inline constexpr const char* kAlgorithm = "splitmix64+mt19937_64+box-muller";

/// splitmix64 finalizer; bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent substream seed from a master seed and up to three
/// stream coordinates (e.g. purpose tag, sweep point, trial index).
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag,
                                      std::uint64_t a = 0,
                                      std::uint64_t b = 0) {
  std::uint64_t s = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  s = splitmix64(s ^ tag);
  s = splitmix64(s ^ a);
  return splitmix64(s ^ b);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n); n must be positive. The 2^-64-scale modulo
/// bias is irrelevant at the index ranges used here.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  return gen() % n;
}

/// Standard normal sampler (Box-Muller, trigonometric form; exactly two
/// uniforms per pair of variates).
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01(gen_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  std::mt19937_64& generator() { return gen_; }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Matrix of i.i.d. standard normals, filled column-major.
inline Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                       std::uint64_t seed) {
  Gaussian g(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = g();
  return m;
}

}  // namespace tvgf::rng
