#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tvgf/graph.hpp"
#include "tvgf/khop.hpp"
#include "tvgf/product.hpp"
#include "tvgf/signal.hpp"

namespace tvgf {

enum class FilterKind { mean, median };

/// Full hyperparameter set of a space-time filter run.
struct FilterConfig {
  KHopParams khop;
  TemporalParams temporal;
  FilterKind kind = FilterKind::mean;
  /// Whether a node's own value joins its lag-0 neighborhood. true matches
  /// the node-selecting graph (identity on the diagonal block); false
  /// matches the strong-product convention.
  bool include_self = true;

  void validate() const;
};

/// Diagnostics accumulated by a filter pass.
struct FilterStats {
  std::size_t empty_neighborhoods = 0;  ///< entries passed through unfiltered
};

struct TimeVertexNode {
  Eigen::Index vertex = 0;
  Eigen::Index instant = 0;

  friend bool operator==(const TimeVertexNode&, const TimeVertexNode&) =
      default;
};

/// Space-time neighborhood of one (vertex, instant) node, partitioned by
/// absolute time offset from the center instant.
struct NeighborhoodSet {
  TimeVertexNode center;
  std::vector<TimeVertexNode> members;
  std::map<Eigen::Index, std::vector<TimeVertexNode>> by_offset;
};

/// Reads the neighborhood of (vertex, instant) off a product-tagged
/// selection matrix. The center belongs to its own neighborhood iff the
/// diagonal entry is stored. Throws std::invalid_argument for non-product
/// matrices and std::out_of_range for bad indices.
NeighborhoodSet neighborhood(const SelectionMatrix& product_graph,
                             Eigen::Index vertex, Eigen::Index instant);

/// Spatial selection relation used by the filters:
/// the attenuated k-hop graph of g's logical adjacency.
SelectionMatrix spatial_selection(const Graph& g, const KHopParams& params);

/// Per-node sequential mean filter. For each (i,t) the output is the
/// arithmetic mean over the boundary-clamped space-time neighborhood; an
/// empty neighborhood passes the input through and bumps the diagnostics
/// counter.
TimeVertexSignal mean_filter_sequential(const TimeVertexSignal& x,
                                        const FilterConfig& cfg,
                                        const Graph& g,
                                        FilterStats* stats = nullptr);

/// Batch mean filter y = diag(1/d) * A * vec(x) over a product-tagged
/// selection matrix. Boundary handling is automatic: rows near t = 0 or
/// t = T-1 simply have smaller degree. Throws std::runtime_error naming the
/// offending (vertex, instant) if any row has degree zero.
TimeVertexSignal mean_filter_batch(const TimeVertexSignal& x,
                                   const SelectionMatrix& product_graph);

/// Per-node median filter over the same neighborhoods as the mean filter;
/// an even member count yields the midpoint of the two central order
/// statistics. With recursive = true, already-filtered values at instants
/// before t replace raw inputs when they re-enter later neighborhoods.
TimeVertexSignal median_filter(const TimeVertexSignal& x,
                               const FilterConfig& cfg, const Graph& g,
                               bool recursive = false,
                               FilterStats* stats = nullptr);

/// A filter bound to a graph and configuration, reusable across signals.
/// Mean filtering with include_self runs through the batch form on a
/// prebuilt node-selecting graph; every other combination runs per node.
class PreparedFilter {
 public:
  PreparedFilter(const Graph& g, const FilterConfig& cfg,
                 bool recursive = false);

  TimeVertexSignal apply(const TimeVertexSignal& x,
                         FilterStats* stats = nullptr) const;

  /// Nonzeros of the effective space-time selection relation.
  std::size_t selection_nonzeros() const { return selection_nnz_; }
  const FilterConfig& config() const { return cfg_; }

 private:
  const Graph* graph_;
  FilterConfig cfg_;
  bool recursive_;
  std::optional<SelectionMatrix> product_;  // batch path only
  std::size_t selection_nnz_;
};

/// One-shot convenience wrapper around PreparedFilter.
TimeVertexSignal apply_filter(const TimeVertexSignal& x,
                              const FilterConfig& cfg, const Graph& g,
                              bool recursive = false,
                              FilterStats* stats = nullptr);

}  // namespace tvgf
