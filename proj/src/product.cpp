#include "tvgf/product.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tvgf {

namespace {

void require_spatial(const SparseMat& a) {
  for (Eigen::Index r = 0; r < a.outerSize(); ++r)
    for (SparseMat::InnerIterator it(a, r); it; ++it)
      if (it.row() == it.col())
        throw std::invalid_argument(
            "spatial selection matrix must have a zero diagonal");
}

/// What a lag-l block contributes to a vertex's column set.
enum class BlockSet { none, neighbors, with_self };

/// Sorted neighbor lists of a zero-diagonal binary matrix, without and with
/// the vertex itself merged in.
struct VertexSets {
  std::vector<std::vector<Eigen::Index>> plain;
  std::vector<std::vector<Eigen::Index>> with_self;
};

VertexSets vertex_sets(const SparseMat& a) {
  const Eigen::Index n = a.rows();
  VertexSets sets;
  sets.plain.resize(n);
  sets.with_self.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& nbr = sets.plain[i];
    for (SparseMat::InnerIterator it(a, i); it; ++it)
      nbr.push_back(it.col());  // CSR rows are already sorted
    auto& self = sets.with_self[i];
    self.reserve(nbr.size() + 1);
    bool placed = false;
    for (Eigen::Index j : nbr) {
      if (!placed && j > i) {
        self.push_back(i);
        placed = true;
      }
      self.push_back(j);
    }
    if (!placed) self.push_back(i);
  }
  return sets;
}

const std::vector<Eigen::Index>* block_columns(const VertexSets& sets,
                                               BlockSet kind,
                                               Eigen::Index vertex) {
  switch (kind) {
    case BlockSet::neighbors:
      return &sets.plain[vertex];
    case BlockSet::with_self:
      return &sets.with_self[vertex];
    case BlockSet::none:
      break;
  }
  return nullptr;
}

/// Assembles the NT x NT block-Toeplitz selection pattern directly in
/// compressed row storage. lag_sets[l] names the column set contributed by
/// blocks at |t-s| = l; writing rows in (t, i) order with s ascending keeps
/// every row sorted.
SparseMat assemble_blocks(const VertexSets& sets, Eigen::Index n,
                          Eigen::Index t_len,
                          const std::vector<BlockSet>& lag_sets) {
  const Eigen::Index dim = n * t_len;
  const auto max_lag = static_cast<Eigen::Index>(lag_sets.size()) - 1;

  SparseMat m(dim, dim);
  auto* outer = m.outerIndexPtr();
  std::size_t nnz = 0;
  for (Eigen::Index t = 0; t < t_len; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      outer[t * n + i] = static_cast<SparseMat::StorageIndex>(nnz);
      const Eigen::Index lo = std::max<Eigen::Index>(0, t - max_lag);
      const Eigen::Index hi = std::min<Eigen::Index>(t_len - 1, t + max_lag);
      for (Eigen::Index s = lo; s <= hi; ++s) {
        const auto* cols =
            block_columns(sets, lag_sets[std::abs(s - t)], i);
        if (cols) nnz += cols->size();
      }
    }
  }
  if (nnz > static_cast<std::size_t>(
                std::numeric_limits<SparseMat::StorageIndex>::max()))
    throw std::length_error(
        "selection matrix nonzeros exceed the storage index range");
  outer[dim] = static_cast<SparseMat::StorageIndex>(nnz);

  m.resizeNonZeros(static_cast<Eigen::Index>(nnz));
  auto* inner = m.innerIndexPtr();
  double* values = m.valuePtr();
  std::size_t pos = 0;
  for (Eigen::Index t = 0; t < t_len; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index lo = std::max<Eigen::Index>(0, t - max_lag);
      const Eigen::Index hi = std::min<Eigen::Index>(t_len - 1, t + max_lag);
      for (Eigen::Index s = lo; s <= hi; ++s) {
        const auto* cols =
            block_columns(sets, lag_sets[std::abs(s - t)], i);
        if (!cols) continue;
        const Eigen::Index base = s * n;
        for (Eigen::Index j : *cols)
          inner[pos++] = static_cast<SparseMat::StorageIndex>(base + j);
      }
    }
  }
  std::fill(values, values + nnz, 1.0);
  return m;
}

}  // namespace

void TemporalParams::validate() const {
  if (n_instants < 2)
    throw std::invalid_argument("n_instants must be at least 2");
  if (half_window < 1 || half_window > n_instants - 1)
    throw std::invalid_argument("half_window must lie in [1, T-1]");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("gamma must be nonnegative");
}

SelectionMatrix line_graph_adjacency(int n_instants) {
  return temporal_adjacency(n_instants, 1);
}

SelectionMatrix temporal_adjacency(int n_instants, int half_window) {
  if (n_instants < 2)
    throw std::invalid_argument("n_instants must be at least 2");
  if (half_window < 1 || half_window >= n_instants)
    throw std::invalid_argument("half_window must lie in [1, T-1]");
  std::vector<Eigen::Triplet<double>> trips;
  for (int t = 0; t < n_instants; ++t)
    for (int s = t + 1; s <= std::min(n_instants - 1, t + half_window); ++s) {
      trips.emplace_back(t, s, 1.0);
      trips.emplace_back(s, t, 1.0);
    }
  SparseMat m(n_instants, n_instants);
  m.setFromTriplets(trips.begin(), trips.end());
  return {std::move(m), SelectionTag::temporal};
}

int effective_temporal_window(const TemporalParams& params) {
  params.validate();
  int window = 0;
  for (int l = 1; l <= params.half_window; ++l) {
    // alpha <= 1, so once a lag fails the predicate every later lag does.
    if (!(std::pow(params.alpha, l) > params.gamma)) break;
    window = l;
  }
  return window;
}

SelectionMatrix strong_product(const SelectionMatrix& spatial,
                               int n_instants) {
  if (n_instants < 1)
    throw std::invalid_argument("n_instants must be at least 1");
  require_spatial(spatial.entries());
  const VertexSets sets = vertex_sets(spatial.entries());
  std::vector<BlockSet> lags = {BlockSet::neighbors};
  if (n_instants > 1) lags.push_back(BlockSet::with_self);
  return {assemble_blocks(sets, spatial.dim(), n_instants, lags),
          SelectionTag::product, spatial.dim()};
}

SelectionMatrix node_selecting_graph(const SelectionMatrix& spatial,
                                     const TemporalParams& params) {
  require_spatial(spatial.entries());
  const int window = effective_temporal_window(params);
  const VertexSets sets = vertex_sets(spatial.entries());
  std::vector<BlockSet> lags(window + 1, BlockSet::with_self);
  return {assemble_blocks(sets, spatial.dim(), params.n_instants, lags),
          SelectionTag::product, spatial.dim()};
}

std::size_t node_selecting_nnz(const SelectionMatrix& spatial,
                               const TemporalParams& params,
                               bool include_self) {
  require_spatial(spatial.entries());
  const int window = effective_temporal_window(params);
  const auto t_len = static_cast<std::size_t>(params.n_instants);
  const auto spatial_nnz = spatial.n_nonzeros();
  const auto n = static_cast<std::size_t>(spatial.dim());

  // Row (i,t) holds |set(i)| entries per surviving instant; the per-vertex
  // and per-instant factors separate.
  std::size_t diag_cols = spatial_nnz + (include_self ? n : 0);
  std::size_t band_pairs = 0;  // ordered (t,s) pairs with 1 <= |t-s| <= w
  for (int l = 1; l <= window; ++l)
    band_pairs += 2 * (t_len - static_cast<std::size_t>(l));
  return diag_cols * t_len + (spatial_nnz + n) * band_pairs;
}

}  // namespace tvgf
