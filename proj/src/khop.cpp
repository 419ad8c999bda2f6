#include "tvgf/khop.hpp"

#include <stdexcept>
#include <vector>

namespace tvgf {

namespace {

void require_zero_diagonal(const SparseMat& a) {
  for (Eigen::Index r = 0; r < a.outerSize(); ++r)
    for (SparseMat::InnerIterator it(a, r); it; ++it)
      if (it.row() == it.col())
        throw std::invalid_argument(
            "k-hop input must have a zero diagonal");
}

void binarize(SparseMat& m) {
  double* v = m.valuePtr();
  for (Eigen::Index k = 0; k < m.nonZeros(); ++k) v[k] = 1.0;
}

/// Keeps off-diagonal entries with value strictly above gamma, as 1s.
SparseMat threshold_off_diagonal(const SparseMat& s, double gamma) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(s.nonZeros()));
  for (Eigen::Index r = 0; r < s.outerSize(); ++r)
    for (SparseMat::InnerIterator it(s, r); it; ++it)
      if (it.row() != it.col() && it.value() > gamma)
        trips.emplace_back(it.row(), it.col(), 1.0);
  SparseMat out(s.rows(), s.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SelectionMatrix attenuated_power_sum(const SparseMat& a,
                                     const KHopParams& params) {
  params.validate();
  require_zero_diagonal(a);
  SparseMat walk = a;  // A^k, exact walk counts (weighted walks for Graph)
  double scale = params.beta;
  SparseMat sum = scale * walk;
  for (int k = 2; k <= params.max_hops; ++k) {
    walk = (walk * a).eval();
    scale *= params.beta;
    sum = (sum + scale * walk).eval();
  }
  return {threshold_off_diagonal(sum, params.gamma), SelectionTag::khop};
}

}  // namespace

void KHopParams::validate() const {
  if (max_hops < 1)
    throw std::invalid_argument("max_hops must be at least 1");
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("beta must lie in (0, 1]");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("gamma must be nonnegative");
}

SelectionMatrix khop_unweighted(const SelectionMatrix& a, int max_hops) {
  if (max_hops < 1)
    throw std::invalid_argument("max_hops must be at least 1");
  require_zero_diagonal(a.entries());
  SparseMat reach = a.entries();  // pairs joined by a length-k walk
  SparseMat acc = a.entries();    // union over walk lengths 1..k
  Eigen::Index nnz = acc.nonZeros();
  for (int k = 2; k <= max_hops; ++k) {
    reach = (reach * a.entries()).eval();
    binarize(reach);
    acc = (acc + reach).eval();
    binarize(acc);
    if (acc.nonZeros() == nnz) break;  // union stabilized: saturated
    nnz = acc.nonZeros();
  }
  // Walks of even length reach the diagonal; the hop relation excludes it.
  return {threshold_off_diagonal(acc, 0.0), SelectionTag::khop};
}

SelectionMatrix khop_attenuated(const SelectionMatrix& a,
                                const KHopParams& params) {
  return attenuated_power_sum(a.entries(), params);
}

SelectionMatrix khop_attenuated_weighted(const Graph& g,
                                         const KHopParams& params) {
  return attenuated_power_sum(g.adjacency(), params);
}

}  // namespace tvgf
