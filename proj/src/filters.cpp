#include "tvgf/filters.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tvgf {

namespace {

/// Precomputed per-vertex column sets of the space-time selection relation:
/// lag 0 uses l0 (self included or not per config), lags 1..window use the
/// neighbor set with self.
struct GatherPlan {
  std::vector<std::vector<Eigen::Index>> l0;
  std::vector<std::vector<Eigen::Index>> band;
  int window = 0;
};

GatherPlan make_plan(const Graph& g, const FilterConfig& cfg) {
  cfg.validate();
  GatherPlan plan;
  plan.window = effective_temporal_window(cfg.temporal);

  const SelectionMatrix spatial = spatial_selection(g, cfg.khop);
  const Eigen::Index n = spatial.dim();
  plan.l0.resize(n);
  plan.band.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Eigen::Index> nbr;
    for (SparseMat::InnerIterator it(spatial.entries(), i); it; ++it)
      nbr.push_back(it.col());
    auto& with_self = plan.band[i];
    with_self.reserve(nbr.size() + 1);
    bool placed = false;
    for (Eigen::Index j : nbr) {
      if (!placed && j > i) {
        with_self.push_back(i);
        placed = true;
      }
      with_self.push_back(j);
    }
    if (!placed) with_self.push_back(i);
    plan.l0[i] = cfg.include_self ? with_self : std::move(nbr);
  }
  return plan;
}

void check_signal_shape(const TimeVertexSignal& x, const FilterConfig& cfg,
                        const Graph& g) {
  if (x.n_vertices() != g.n_vertices())
    throw std::invalid_argument(
        "signal row count does not match the graph's vertex count");
  if (x.n_instants() != cfg.temporal.n_instants)
    throw std::invalid_argument(
        "signal column count does not match temporal n_instants");
}

/// Per-node filter skeleton shared by the sequential mean and the median.
/// gather fills `scratch` with the neighborhood values of (i,t); source
/// selection (raw vs already-filtered) is the caller's.
template <typename Aggregate>
TimeVertexSignal run_per_node(const TimeVertexSignal& x,
                              const FilterConfig& cfg, const Graph& g,
                              bool recursive, FilterStats* stats,
                              Aggregate aggregate) {
  check_signal_shape(x, cfg, g);
  const GatherPlan plan = make_plan(g, cfg);
  const Eigen::MatrixXd& in = x.values();
  const Eigen::Index n = in.rows();
  const Eigen::Index t_len = in.cols();

  Eigen::MatrixXd out(n, t_len);
  std::vector<double> scratch;
  std::size_t empties = 0;
  for (Eigen::Index t = 0; t < t_len; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      scratch.clear();
      for (Eigen::Index j : plan.l0[i]) scratch.push_back(in(j, t));
      for (int l = 1; l <= plan.window; ++l) {
        if (t - l >= 0) {
          // Filtered past values feed the recursion; the current and
          // future instants always read raw input.
          const Eigen::MatrixXd& src = recursive ? out : in;
          for (Eigen::Index j : plan.band[i]) scratch.push_back(src(j, t - l));
        }
        if (t + l < t_len)
          for (Eigen::Index j : plan.band[i]) scratch.push_back(in(j, t + l));
      }
      if (scratch.empty()) {
        out(i, t) = in(i, t);  // never fabricate a value
        ++empties;
        continue;
      }
      out(i, t) = aggregate(scratch);
    }
  }
  if (stats) stats->empty_neighborhoods += empties;
  return TimeVertexSignal(std::move(out));
}

double mean_of(std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double median_of(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return (lower + upper) / 2.0;  // average of the two central values
}

}  // namespace

void FilterConfig::validate() const {
  khop.validate();
  temporal.validate();
}

NeighborhoodSet neighborhood(const SelectionMatrix& product_graph,
                             Eigen::Index vertex, Eigen::Index instant) {
  if (product_graph.tag() != SelectionTag::product)
    throw std::invalid_argument("neighborhood needs a product-tagged matrix");
  const Eigen::Index n = product_graph.block_size();
  const Eigen::Index t_len = product_graph.dim() / n;
  if (vertex < 0 || vertex >= n)
    throw std::out_of_range("vertex index out of range");
  if (instant < 0 || instant >= t_len)
    throw std::out_of_range("instant index out of range");

  NeighborhoodSet set;
  set.center = {vertex, instant};
  const Eigen::Index row = instant * n + vertex;
  for (SparseMat::InnerIterator it(product_graph.entries(), row); it; ++it) {
    const TimeVertexNode node{it.col() % n, it.col() / n};
    set.members.push_back(node);
    set.by_offset[std::abs(node.instant - instant)].push_back(node);
  }
  return set;
}

SelectionMatrix spatial_selection(const Graph& g, const KHopParams& params) {
  return khop_attenuated(logical_adjacency(g), params);
}

TimeVertexSignal mean_filter_sequential(const TimeVertexSignal& x,
                                        const FilterConfig& cfg,
                                        const Graph& g, FilterStats* stats) {
  return run_per_node(x, cfg, g, /*recursive=*/false, stats, mean_of);
}

TimeVertexSignal median_filter(const TimeVertexSignal& x,
                               const FilterConfig& cfg, const Graph& g,
                               bool recursive, FilterStats* stats) {
  return run_per_node(x, cfg, g, recursive, stats, median_of);
}

TimeVertexSignal mean_filter_batch(const TimeVertexSignal& x,
                                   const SelectionMatrix& product_graph) {
  if (product_graph.tag() != SelectionTag::product)
    throw std::invalid_argument(
        "batch mean filter needs a product-tagged matrix");
  const Eigen::Index n = product_graph.block_size();
  if (n != x.n_vertices() ||
      product_graph.dim() != x.n_vertices() * x.n_instants())
    throw std::invalid_argument(
        "selection matrix dimensions do not match the signal");

  const Eigen::VectorXd deg = degree_vector(product_graph);
  for (Eigen::Index r = 0; r < deg.size(); ++r) {
    if (deg[r] == 0.0) {
      std::ostringstream os;
      os << "zero-degree node (vertex " << r % n << ", instant " << r / n
         << "): mean normalization undefined; enable self-inclusion";
      throw std::runtime_error(os.str());
    }
  }
  Eigen::VectorXd y = product_graph.entries() * x.vec();
  y.array() /= deg.array();
  return TimeVertexSignal(
      Eigen::Map<const Eigen::MatrixXd>(y.data(), n, x.n_instants()));
}

PreparedFilter::PreparedFilter(const Graph& g, const FilterConfig& cfg,
                               bool recursive)
    : graph_(&g), cfg_(cfg), recursive_(recursive) {
  cfg_.validate();
  const SelectionMatrix spatial = spatial_selection(g, cfg_.khop);
  selection_nnz_ =
      node_selecting_nnz(spatial, cfg_.temporal, cfg_.include_self);
  if (cfg_.kind == FilterKind::mean && cfg_.include_self)
    product_ = node_selecting_graph(spatial, cfg_.temporal);
}

TimeVertexSignal PreparedFilter::apply(const TimeVertexSignal& x,
                                       FilterStats* stats) const {
  if (product_) return mean_filter_batch(x, *product_);
  if (cfg_.kind == FilterKind::mean)
    return mean_filter_sequential(x, cfg_, *graph_, stats);
  return median_filter(x, cfg_, *graph_, recursive_, stats);
}

TimeVertexSignal apply_filter(const TimeVertexSignal& x,
                              const FilterConfig& cfg, const Graph& g,
                              bool recursive, FilterStats* stats) {
  return PreparedFilter(g, cfg, recursive).apply(x, stats);
}

}  // namespace tvgf
