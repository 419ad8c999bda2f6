#include "tvgf/graph.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tvgf {

namespace {

void check_adjacency(const SparseMat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("adjacency must be square");
  for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
    for (SparseMat::InnerIterator it(a, r); it; ++it) {
      if (!(it.value() >= 0.0) || !std::isfinite(it.value()))
        throw std::invalid_argument(
            "adjacency weights must be finite and nonnegative");
      if (it.row() == it.col() && it.value() != 0.0)
        throw std::invalid_argument("adjacency must have a zero diagonal");
    }
  }
  SparseMat t = SparseMat(a.transpose());
  for (Eigen::Index r = 0; r < a.outerSize(); ++r) {
    SparseMat::InnerIterator ia(a, r), ib(t, r);
    for (; ia && ib; ++ia, ++ib) {
      if (ia.col() != ib.col() || ia.value() != ib.value())
        throw std::invalid_argument("adjacency must be symmetric");
    }
    if (ia || ib) throw std::invalid_argument("adjacency must be symmetric");
  }
}

SparseMat drop_explicit_zeros(SparseMat m) {
  m.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  m.makeCompressed();
  return m;
}

}  // namespace

Graph::Graph(Eigen::Index n_vertices, const std::vector<Edge>& edges) {
  if (n_vertices <= 0)
    throw std::invalid_argument("graph needs at least one vertex");
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.i < 0 || e.i >= n_vertices || e.j < 0 || e.j >= n_vertices) {
      std::ostringstream os;
      os << "edge (" << e.i << ", " << e.j << ") out of range for "
         << n_vertices << " vertices";
      throw std::invalid_argument(os.str());
    }
    if (e.i == e.j) {
      std::ostringstream os;
      os << "self-loop at vertex " << e.i << " is not allowed";
      throw std::invalid_argument(os.str());
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0)
      throw std::invalid_argument(
          "edge weights must be finite and nonnegative");
    trips.emplace_back(e.i, e.j, e.weight);
    trips.emplace_back(e.j, e.i, e.weight);
  }
  SparseMat a(n_vertices, n_vertices);
  a.setFromTriplets(trips.begin(), trips.end());  // duplicates are summed
  adj_ = drop_explicit_zeros(std::move(a));
}

Graph Graph::from_adjacency(SparseMat adjacency) {
  adjacency.makeCompressed();
  check_adjacency(adjacency);
  return Graph(drop_explicit_zeros(std::move(adjacency)));
}

Eigen::VectorXd Graph::degrees() const {
  return adj_ * Eigen::VectorXd::Ones(adj_.cols());
}

SparseMat Graph::laplacian() const {
  const Eigen::VectorXd d = degrees();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(adj_.nonZeros()) + adj_.rows());
  for (Eigen::Index r = 0; r < adj_.outerSize(); ++r)
    for (SparseMat::InnerIterator it(adj_, r); it; ++it)
      trips.emplace_back(it.row(), it.col(), -it.value());
  for (Eigen::Index i = 0; i < adj_.rows(); ++i)
    trips.emplace_back(i, i, d[i]);
  SparseMat l(adj_.rows(), adj_.cols());
  l.setFromTriplets(trips.begin(), trips.end());
  return l;
}

SelectionMatrix::SelectionMatrix(SparseMat entries, SelectionTag tag,
                                 Eigen::Index block_size)
    : entries_(std::move(entries)), tag_(tag), block_size_(block_size) {
  entries_.makeCompressed();
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("selection matrix must be square");
  const double* v = entries_.valuePtr();
  for (Eigen::Index k = 0; k < entries_.nonZeros(); ++k)
    if (v[k] != 1.0)
      throw std::invalid_argument(
          "selection matrix entries must all equal 1");
  if (tag_ == SelectionTag::product) {
    if (block_size_ <= 0 || entries_.rows() % block_size_ != 0)
      throw std::invalid_argument(
          "product selection matrix needs a block size dividing its dim");
  } else if (block_size_ != 0) {
    throw std::invalid_argument(
        "block size is only meaningful for product matrices");
  }
}

bool SelectionMatrix::is_symmetric() const {
  SparseMat t = SparseMat(entries_.transpose());
  for (Eigen::Index r = 0; r < entries_.outerSize(); ++r) {
    SparseMat::InnerIterator ia(entries_, r), ib(t, r);
    for (; ia && ib; ++ia, ++ib)
      if (ia.col() != ib.col()) return false;
    if (ia || ib) return false;
  }
  return true;
}

SelectionMatrix logical_adjacency(const Graph& g) {
  SparseMat m = g.adjacency();  // zero-weight entries already pruned
  double* v = m.valuePtr();
  for (Eigen::Index k = 0; k < m.nonZeros(); ++k) v[k] = 1.0;
  return {std::move(m), SelectionTag::khop};
}

Eigen::VectorXd degree_vector(const Graph& g) { return g.degrees(); }

Eigen::VectorXd degree_vector(const SelectionMatrix& m) {
  return m.entries() * Eigen::VectorXd::Ones(m.dim());
}

}  // namespace tvgf
