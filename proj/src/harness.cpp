#include "tvgf/harness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tvgf/rng.hpp"

namespace tvgf {

double snr_db(const Eigen::MatrixXd& clean, const Eigen::MatrixXd& other) {
  if (clean.rows() != other.rows() || clean.cols() != other.cols())
    throw std::invalid_argument("snr_db: shape mismatch");
  const double signal_energy = clean.squaredNorm();
  if (signal_energy == 0.0)
    throw std::invalid_argument("snr_db: zero signal");
  const double error_energy = (clean - other).squaredNorm();
  if (error_energy == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal_energy / error_energy);
}

Eigen::MatrixXd add_white_noise(const Eigen::MatrixXd& clean,
                                double target_snr_db, std::uint64_t seed) {
  const double signal_energy = clean.squaredNorm();
  if (signal_energy == 0.0)
    throw std::invalid_argument("add_white_noise: zero signal");
  Eigen::MatrixXd noise =
      rng::gaussian_matrix(clean.rows(), clean.cols(), seed);
  const double drawn_energy = noise.squaredNorm();
  // Scale the drawn matrix to the exact target energy; this removes
  // trial-to-trial input-SNR jitter.
  const double target_energy =
      signal_energy / std::pow(10.0, target_snr_db / 10.0);
  noise *= std::sqrt(target_energy / drawn_energy);
  return clean + noise;
}

Eigen::MatrixXd add_impulse_noise(const Eigen::MatrixXd& x, double fraction,
                                  double amplitude_rms, std::uint64_t seed) {
  if (!(fraction >= 0.0) || fraction > 1.0)
    throw std::invalid_argument("impulse fraction must lie in [0, 1]");
  if (!(amplitude_rms >= 0.0))
    throw std::invalid_argument("impulse amplitude must be nonnegative");
  const auto size = static_cast<std::uint64_t>(x.size());
  const auto count = static_cast<std::uint64_t>(
      std::llround(fraction * static_cast<double>(size)));
  const double rms =
      std::sqrt(x.squaredNorm() / static_cast<double>(x.size()));

  Eigen::MatrixXd y = x;
  std::mt19937_64 gen(seed);
  // Partial Fisher-Yates over the flat indices picks `count` distinct
  // entries.
  std::vector<std::uint64_t> idx(size);
  for (std::uint64_t i = 0; i < size; ++i) idx[i] = i;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + rng::bounded(gen, size - i);
    std::swap(idx[i], idx[j]);
    const double sign = (gen() & 1) ? 1.0 : -1.0;
    y.data()[idx[i]] += sign * amplitude_rms * rms;
  }
  return y;
}

TimeVertexSignal synthesize_smooth_signal(const Graph& g, int n_instants,
                                          double smoothness,
                                          std::uint64_t seed) {
  if (n_instants < 2)
    throw std::invalid_argument("synthesis needs at least two instants");
  if (!(smoothness >= 0.0))
    throw std::invalid_argument("smoothness must be nonnegative");
  const Eigen::Index n = g.n_vertices();
  const SparseMat lap = g.laplacian();
  const double lambda_hat = 2.0 * g.degrees().maxCoeff();  // Gershgorin
  const auto steps = static_cast<long>(std::llround(smoothness));

  auto smooth_pattern = [&](std::uint64_t stream) {
    rng::Gaussian gauss(stream);
    Eigen::VectorXd u(n);
    for (Eigen::Index i = 0; i < n; ++i) u[i] = gauss();
    if (lambda_hat > 0.0)
      for (long s = 0; s < steps; ++s) u -= (lap * u) / lambda_hat;
    const double rms = u.norm() / std::sqrt(static_cast<double>(n));
    if (rms > 0.0) u /= rms;
    return u;
  };

  const Eigen::VectorXd u1 = smooth_pattern(rng::derive_stream(seed, 1));
  const Eigen::VectorXd u2 = smooth_pattern(rng::derive_stream(seed, 2));
  std::mt19937_64 gen(rng::derive_stream(seed, 3));
  const double phase1 = 2.0 * M_PI * rng::uniform01(gen);
  const double phase2 = 2.0 * M_PI * rng::uniform01(gen);

  // Two slow cycles across the observation window keep adjacent instants
  // strongly correlated.
  Eigen::MatrixXd x(n, n_instants);
  for (int t = 0; t < n_instants; ++t) {
    const double theta =
        2.0 * M_PI * 2.0 * static_cast<double>(t) / n_instants;
    x.col(t) = u1 * std::sin(theta + phase1) +
               0.6 * u2 * std::sin(theta + phase2);
  }
  const double fro = x.norm();
  if (fro > 0.0)
    x *= std::sqrt(static_cast<double>(x.size())) / fro;  // unit RMS
  return TimeVertexSignal(std::move(x));
}

}  // namespace tvgf
