#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

#include "tvgf/graph.hpp"

namespace tvgf {

/// Raised when a file cannot be opened or created; the CLI maps it to
/// exit code 2.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace csv {

/// Round-trip-exact decimal rendering (17 significant digits).
std::string format_full(double v);

/// Console rendering, 6 significant digits.
std::string format_short(double v);

/// Loads a rectangular numeric CSV. Rejects ragged rows, non-numeric
/// fields and non-finite values with the offending row/column in the
/// message (1-based, header excluded).
Eigen::MatrixXd load_matrix(const std::string& path, bool has_header = false);

/// Writes a matrix as CSV at full precision.
void save_matrix(const std::string& path, const Eigen::MatrixXd& m);

/// Writes "i,j,weight" rows, one per undirected edge with i < j, sorted.
/// Vertex ids are 0-based.
void save_edge_list(const std::string& path, const Graph& g);

/// Writes a sparse selection matrix in coordinate text form: a "rows cols
/// nnz" header line, then "row col value" lines in row-major order
/// (0-based).
void save_coo(const std::string& path, const SelectionMatrix& m);

}  // namespace csv
}  // namespace tvgf
