#pragma once

#include <cstddef>

#include "tvgf/graph.hpp"

namespace tvgf {

/// Hyperparameters of the temporal side of the node-selecting graph.
struct TemporalParams {
  int n_instants = 2;   ///< T, number of time instants
  int half_window = 1;  ///< M, instants considered on each side, in [1, T-1]
  double alpha = 1.0;   ///< temporal attenuation, in (0, 1]
  double gamma = 0.0;   ///< selection threshold shared with the spatial side

  void validate() const;
};

/// T x T adjacency of the undirected temporal line graph: ones exactly on
/// the first super- and sub-diagonal. Requires n_instants >= 2.
SelectionMatrix line_graph_adjacency(int n_instants);

/// T x T banded Toeplitz adjacency: entry (t,s) = 1 iff 1 <= |t-s| <= M.
/// Equals line_graph_adjacency when half_window is 1.
SelectionMatrix temporal_adjacency(int n_instants, int half_window);

/// Largest lag l in [0, half_window] whose band survives thresholding,
/// i.e. max{l : l == 0 or alpha^l > gamma}. Lag 0 always survives because
/// the diagonal block is not thresholded.
int effective_temporal_window(const TemporalParams& params);

/// Strong product of a spatial selection graph with the temporal line
/// graph, as an NT x NT binary block matrix in vertex-major layout:
/// diagonal blocks equal the spatial matrix, blocks at |t-s| = 1 equal the
/// spatial matrix plus the identity, everything else is zero. n_instants
/// of 1 degenerates to the spatial matrix itself.
SelectionMatrix strong_product(const SelectionMatrix& spatial,
                               int n_instants);

/// Weighted node-selecting graph: block (t,s) with lag l = |t-s| equals the
/// spatial matrix plus the identity when l = 0, the same block when
/// 1 <= l <= half_window and alpha^l > gamma, and zero otherwise. Because
/// blocks are binary, the per-lag scaling-then-thresholding reduces to the
/// all-or-nothing predicate alpha^l > gamma; alpha never produces
/// fractional weights.
SelectionMatrix node_selecting_graph(const SelectionMatrix& spatial,
                                     const TemporalParams& params);

/// Nonzero count node_selecting_graph would produce, computed without
/// assembling the matrix. include_self = false counts the variant whose
/// diagonal block omits the identity (the strong-product convention).
std::size_t node_selecting_nnz(const SelectionMatrix& spatial,
                               const TemporalParams& params,
                               bool include_self = true);

}  // namespace tvgf
