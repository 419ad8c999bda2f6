#pragma once

#include <Eigen/Dense>

namespace tvgf {

/// N x T matrix of sensor readings; column t is the static graph signal at
/// instant t. Entries are validated finite at construction.
class TimeVertexSignal {
 public:
  explicit TimeVertexSignal(Eigen::MatrixXd values);

  Eigen::Index n_vertices() const { return values_.rows(); }
  Eigen::Index n_instants() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }

  /// Column-stacked view: entry instant*N + vertex, matching the flat index
  /// convention of product-tagged SelectionMatrix.
  Eigen::Map<const Eigen::VectorXd> vec() const {
    return {values_.data(), values_.size()};
  }

 private:
  Eigen::MatrixXd values_;
};

}  // namespace tvgf
