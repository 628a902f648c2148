#pragma once

#include <utility>

#include "etlasso/types.hpp"

namespace etlasso {

// Centers each column of X and scales it so its squared norm equals n, and
// centers y. Throws ZeroVarianceColumn for constant columns and
// DimensionMismatch when the shapes disagree.
std::pair<DesignMatrix, Response> standardize(const Matrix& X, const Vector& y);

// Maps coefficients estimated on the standardized columns indexed by `subset`
// back to the raw scale, returning (coefficients, intercept).
std::pair<Vector, double> to_original_scale(const DesignMatrix& X, const Response& y,
                                            const IndexSet& subset, const Vector& beta_std);

}  // namespace etlasso
