#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstddef>
#include <vector>

namespace tvgf {

/// Row-major (CSR) sparse matrix; rows are vertex/node neighbor lists.
using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Undirected edge with a nonnegative weight.
struct Edge {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  double weight = 1.0;
};

/// Undirected weighted graph over N sensor nodes.
///
/// The adjacency is stored sparse and symmetric with nonnegative weights and
/// a zero diagonal; all three are enforced at construction. Instances are
/// immutable, so they are safe to share across threads.
class Graph {
 public:
  /// Builds the graph from an undirected edge list. Each edge is mirrored;
  /// duplicate pairs have their weights summed; zero-weight edges are
  /// dropped. Throws std::invalid_argument on self-loops, negative or
  /// non-finite weights, or out-of-range endpoints.
  Graph(Eigen::Index n_vertices, const std::vector<Edge>& edges);

  /// Wraps an existing adjacency matrix, validating squareness, symmetry,
  /// zero diagonal and nonnegative finite weights.
  static Graph from_adjacency(SparseMat adjacency);

  Eigen::Index n_vertices() const { return adj_.rows(); }
  std::size_t n_edges() const {
    return static_cast<std::size_t>(adj_.nonZeros()) / 2;
  }
  const SparseMat& adjacency() const { return adj_; }

  /// Weighted degree of every vertex (row sums of the adjacency).
  Eigen::VectorXd degrees() const;

  /// Combinatorial Laplacian L = D - A.
  SparseMat laplacian() const;

 private:
  explicit Graph(SparseMat adjacency) : adj_(std::move(adjacency)) {}

  SparseMat adj_;
};

/// Which selection relation a SelectionMatrix encodes.
enum class SelectionTag { khop, temporal, product };

/// Sparse binary (0/1) matrix encoding a node-selection relation: a hop
/// neighborhood, a temporal band, or an NT x NT space-time product graph.
///
/// Every stored entry equals 1; absence means 0. Product-tagged matrices
/// carry block_size() = N, the number of spatial vertices per time block,
/// and use the vertex-major flat index (vertex, instant) -> instant*N+vertex
/// so that flattening matches column-stacking an N x T signal matrix.
class SelectionMatrix {
 public:
  SelectionMatrix(SparseMat entries, SelectionTag tag,
                  Eigen::Index block_size = 0);

  Eigen::Index dim() const { return entries_.rows(); }
  SelectionTag tag() const { return tag_; }
  Eigen::Index block_size() const { return block_size_; }
  const SparseMat& entries() const { return entries_; }
  std::size_t n_nonzeros() const {
    return static_cast<std::size_t>(entries_.nonZeros());
  }

  /// Structural symmetry check (values are uniformly 1).
  bool is_symmetric() const;

 private:
  SparseMat entries_;
  SelectionTag tag_;
  Eigen::Index block_size_;
};

/// Binary indicator of the nonzero pattern of g's adjacency. The result is
/// the 1-hop selection relation, so it carries the khop tag.
SelectionMatrix logical_adjacency(const Graph& g);

/// Row sums. For a Graph these are the weighted degrees; for a binary
/// SelectionMatrix they count the stored entries per row.
Eigen::VectorXd degree_vector(const Graph& g);
Eigen::VectorXd degree_vector(const SelectionMatrix& m);

}  // namespace tvgf
