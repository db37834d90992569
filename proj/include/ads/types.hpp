#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace ads {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;  // row = sample / particle / component

struct DataShape {
  int h = 0;
  int w = 0;
  int size() const { return h * w; }
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ads
