#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "tvgf/graph.hpp"
#include "tvgf/signal.hpp"

namespace tvgf {

/// Signal-to-noise ratio 10*log10(||clean||_F^2 / ||clean - other||_F^2)
/// in dB. Returns +infinity when the matrices are identical; throws
/// std::invalid_argument on shape mismatch or an all-zero clean signal.
double snr_db(const Eigen::MatrixXd& clean, const Eigen::MatrixXd& other);

/// clean + additive white Gaussian noise, with the drawn noise matrix
/// rescaled so the realized SNR hits target_snr_db exactly (up to rounding,
/// far inside +-0.01 dB). Deterministic in seed.
Eigen::MatrixXd add_white_noise(const Eigen::MatrixXd& clean,
                                double target_snr_db, std::uint64_t seed);

/// Adds impulse spikes of magnitude amplitude_rms * RMS(x) with random sign
/// to round(fraction * N * T) distinct entries. Deterministic in seed.
Eigen::MatrixXd add_impulse_noise(const Eigen::MatrixXd& x, double fraction,
                                  double amplitude_rms, std::uint64_t seed);

/// Deterministic spatially and temporally smooth synthetic signal: two
/// seeded Gaussian node vectors are low-pass diffused on the graph for
/// round(smoothness) steps of u <- u - L u / lambda_hat (lambda_hat the
/// Gershgorin bound 2*max degree), unit-RMS normalized, then mixed with two
/// slow sinusoids in t; the result is scaled to unit RMS. Larger smoothness
/// monotonically lowers the Laplacian quadratic form of the columns; in the
/// limit the columns become spatially constant.
TimeVertexSignal synthesize_smooth_signal(const Graph& g, int n_instants,
                                          double smoothness,
                                          std::uint64_t seed);

}  // namespace tvgf
