#pragma once

#include "tvgf/graph.hpp"

namespace tvgf {

/// Hyperparameters of the attenuated k-hop construction.
struct KHopParams {
  int max_hops = 1;    ///< K, maximum hop count, >= 1
  double beta = 1.0;   ///< spatial attenuation, in (0, 1]
  double gamma = 0.0;  ///< selection threshold, >= 0

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// K-hop graph of a binary symmetric zero-diagonal adjacency: entry (i,j)
/// is 1 iff i != j and the hop distance from i to j is at most max_hops.
/// max_hops beyond the diameter is legal and saturates.
SelectionMatrix khop_unweighted(const SelectionMatrix& a, int max_hops);

/// Attenuated k-hop graph: accumulates the walk-count power sum
/// sum_{k=1..K} beta^k A^k and keeps the off-diagonal pairs whose
/// accumulated value strictly exceeds gamma. The sum is evaluated in double
/// precision over exact walk counts; counts can exceed the 53-bit mantissa
/// on dense graphs once max_hops grows past ~64, which loosens the
/// threshold comparison accordingly.
SelectionMatrix khop_attenuated(const SelectionMatrix& a,
                                const KHopParams& params);

/// Variant of khop_attenuated whose power sum consumes the weighted
/// adjacency of g instead of its binary logical adjacency, for experiments
/// where edge weights should drive the threshold.
SelectionMatrix khop_attenuated_weighted(const Graph& g,
                                         const KHopParams& params);

}  // namespace tvgf
