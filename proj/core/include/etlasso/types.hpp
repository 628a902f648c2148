#pragma once

#include <Eigen/Dense>

#include <vector>

namespace etlasso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Sorted, duplicate-free feature indices (0-based).
using IndexSet = std::vector<int>;

// Column-standardized design. Each column of `values` has mean zero and
// squared norm equal to the number of rows, so (1/n) X_j' X_j = 1. The
// original column means and centered-column norms are kept so estimates can
// be mapped back to the raw scale.
struct DesignMatrix {
  Matrix values;
  Vector column_means;
  Vector column_norms;
  bool standardized = false;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// Centered response; `mean` is the original mean, used to de-center
// predictions.
struct Response {
  Vector values;
  double mean = 0.0;
};

// Parameters of a log-equispaced penalty grid.
struct GridSpec {
  int count = 100;
  double ratio = 1e-3;
};

// Realized penalty grid, strictly decreasing.
struct LambdaGrid {
  std::vector<double> values;
  double ratio = 0.0;

  int count() const { return static_cast<int>(values.size()); }
  double front() const { return values.front(); }
  double back() const { return values.back(); }
};

}  // namespace etlasso
