#pragma once

#include <Eigen/Dense>

#include "tvgf/graph.hpp"

namespace tvgf {

/// Edge weight policy for k-nearest-neighbor graphs.
enum class EdgeWeighting { binary, inverse_distance, gaussian };

/// Builds the OR-symmetrized k-nearest-neighbor graph of N points in R^d:
/// edge (i,j) exists iff j is among i's k nearest neighbors (Euclidean) or
/// i is among j's. Ties at the k-th distance break by lower index.
///
/// coords is N x d, one row per node. Weights follow `weighting`:
///   binary            1 for every edge
///   inverse_distance  1/dist(i,j); duplicate points are rejected
///   gaussian          exp(-dist^2 / (2 sigma^2)); sigma <= 0 selects the
///                     mean distance over the selected edges
///
/// Throws std::invalid_argument when N < 2, k is outside [1, N-1], any
/// coordinate is non-finite, or inverse-distance weighting meets a
/// zero-distance pair.
Graph build_knn_graph(const Eigen::MatrixXd& coords, int k,
                      EdgeWeighting weighting = EdgeWeighting::binary,
                      double gaussian_sigma = 0.0);

}  // namespace tvgf
