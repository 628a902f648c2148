#pragma once

#include <cstdint>

#include "etlasso/lasso_path.hpp"
#include "etlasso/types.hpp"

namespace etlasso {

// Penalty selection by an information criterion or cross-validation over the
// same grid the path solver uses.

struct CriterionTrace {
  LambdaGrid grid;
  std::vector<double> scores;   // one per grid point, lower is better
  int chosen_index = -1;
  double chosen_lambda = 0.0;
  IndexSet selected;
  Vector chosen_coefs;          // path solution at the chosen penalty
};

// Chooses lambda minimizing n*log(RSS/n) + log(n)*df along the full path,
// where df is the number of nonzero coefficients; ties go to the larger
// lambda. RSS is floored at 1e-12.
CriterionTrace bic_select(const DesignMatrix& X, const Response& y, const GridSpec& grid = {},
                          const PathOptions& options = {});

// K-fold cross-validation with a seeded shuffle and a grid shared across
// folds; chooses the lambda with the smallest mean held-out squared error and
// takes the support from a full-data fit at that lambda.
CriterionTrace cv_select(const DesignMatrix& X, const Response& y, const GridSpec& grid,
                         int folds, std::uint64_t seed, const PathOptions& options = {});

}  // namespace etlasso
