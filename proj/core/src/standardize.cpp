#include "etlasso/standardize.hpp"

#include <cmath>

#include "etlasso/errors.hpp"

namespace etlasso {

std::pair<DesignMatrix, Response> standardize(const Matrix& X, const Vector& y) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (y.size() != n)
    throw DimensionMismatch("response length " + std::to_string(y.size()) +
                            " does not match " + std::to_string(n) + " rows");
  if (n < 2) throw InvalidInput("need at least 2 rows to standardize");
  if (!X.allFinite() || !y.allFinite()) throw InvalidInput("non-finite values in input");

  DesignMatrix out;
  out.values.resize(n, p);
  out.column_means.resize(p);
  out.column_norms.resize(p);
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  for (Eigen::Index j = 0; j < p; ++j) {
    const double mean = X.col(j).mean();
    Vector centered = X.col(j).array() - mean;
    const double norm = centered.norm();
    // A centered constant column is zero up to rounding of the mean.
    if (norm <= (std::abs(mean) + 1.0) * sqrt_n * 1e-13)
      throw ZeroVarianceColumn(static_cast<int>(j));
    out.values.col(j) = centered * (sqrt_n / norm);
    out.column_means[j] = mean;
    out.column_norms[j] = norm;
  }
  out.standardized = true;

  Response resp;
  resp.mean = y.mean();
  resp.values = y.array() - resp.mean;
  return {std::move(out), std::move(resp)};
}

std::pair<Vector, double> to_original_scale(const DesignMatrix& X, const Response& y,
                                            const IndexSet& subset, const Vector& beta_std) {
  if (static_cast<Eigen::Index>(subset.size()) != beta_std.size())
    throw DimensionMismatch("subset and coefficient lengths differ");
  const double sqrt_n = std::sqrt(static_cast<double>(X.rows()));
  Vector beta(beta_std.size());
  double intercept = y.mean;
  for (Eigen::Index i = 0; i < beta_std.size(); ++i) {
    const int j = subset[static_cast<std::size_t>(i)];
    beta[i] = beta_std[i] * sqrt_n / X.column_norms[j];
    intercept -= beta[i] * X.column_means[j];
  }
  return {std::move(beta), intercept};
}

}  // namespace etlasso
