#include "tvgf/signal.hpp"

#include <stdexcept>

namespace tvgf {

TimeVertexSignal::TimeVertexSignal(Eigen::MatrixXd values)
    : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw std::invalid_argument("signal must be a nonempty N x T matrix");
  if (!values_.allFinite())
    throw std::invalid_argument("signal entries must be finite");
}

}  // namespace tvgf
