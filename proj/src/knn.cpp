#include "tvgf/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tvgf {

Graph build_knn_graph(const Eigen::MatrixXd& coords, int k,
                      EdgeWeighting weighting, double gaussian_sigma) {
  const Eigen::Index n = coords.rows();
  if (n < 2)
    throw std::invalid_argument("k-NN graph needs at least two points");
  if (k < 1 || k >= n)
    throw std::invalid_argument("k must lie in [1, N-1]");
  if (!coords.allFinite())
    throw std::invalid_argument("coordinates must be finite");

  // Brute-force scan; ties at the k-th distance break by lower index so the
  // result is independent of evaluation order.
  std::vector<std::pair<double, Eigen::Index>> cand(n - 1);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * k);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t m = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d2 = (coords.row(i) - coords.row(j)).squaredNorm();
      cand[m++] = {d2, j};
    }
    std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
    std::sort(cand.begin(), cand.begin() + k);
    for (int s = 0; s < k; ++s) {
      const Eigen::Index j = cand[s].second;
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<double> dist(pairs.size());
  for (std::size_t e = 0; e < pairs.size(); ++e)
    dist[e] = (coords.row(pairs[e].first) - coords.row(pairs[e].second))
                  .norm();

  double sigma = gaussian_sigma;
  if (weighting == EdgeWeighting::gaussian && sigma <= 0.0) {
    double sum = 0.0;
    for (double d : dist) sum += d;
    sigma = pairs.empty() ? 0.0 : sum / static_cast<double>(pairs.size());
  }

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    double w = 1.0;
    switch (weighting) {
      case EdgeWeighting::binary:
        break;
      case EdgeWeighting::inverse_distance:
        if (dist[e] == 0.0)
          throw std::invalid_argument(
              "duplicate points: inverse-distance weighting undefined for "
              "zero distances");
        w = 1.0 / dist[e];
        break;
      case EdgeWeighting::gaussian:
        // sigma can only be 0 when every selected edge has zero length;
        // the kernel limit there is 1.
        w = sigma > 0.0
                ? std::exp(-(dist[e] * dist[e]) / (2.0 * sigma * sigma))
                : 1.0;
        break;
    }
    edges.push_back({pairs[e].first, pairs[e].second, w});
  }
  return Graph(n, edges);
}

}  // namespace tvgf
