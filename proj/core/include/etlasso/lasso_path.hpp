#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "etlasso/types.hpp"

namespace etlasso {

// Solver for
//
//   minimize (1/2n) ||y - X b||^2 + lambda ||b||_1
//
// over a decreasing penalty grid, by cyclic coordinate descent with warm
// starts and residual updates. Alongside the coefficient path it records each
// feature's entry value: the largest visited grid lambda at which the feature
// has a nonzero coefficient (0 if it never activates).

struct PathOptions {
  double tol = 1e-7;    // convergence: max coefficient change in a full sweep
  int max_iter = 10000; // sweep budget per grid point
};

struct LassoPath {
  LambdaGrid grid;
  std::vector<Vector> coefs;          // one length-p vector per grid point
  Vector entry_values;                // per feature; a grid value or 0
  std::vector<std::uint8_t> converged;
  std::vector<int> iterations;        // sweeps spent per grid point
  std::vector<std::uint8_t> visited;
  int n_visited = 0;
  bool stopped_early = false;
};

// Early-termination predicate, checked after each grid point with the sorted
// indices of the currently nonzero coefficients.
using StopRule = std::function<bool(const std::vector<int>&)>;

// Largest penalty with an all-zero solution: max_j |X_j' y| / n.
double lambda_max(const Matrix& X, const Vector& y);
double lambda_max(const DesignMatrix& X, const Response& y);

// Log-equispaced grid of `count` values from `lmax` down to `ratio * lmax`.
LambdaGrid make_grid(double lmax, int count, double ratio);

LassoPath fit_path(const Matrix& X, const Vector& y, const LambdaGrid& grid,
                   const PathOptions& options = {}, const StopRule& stop = {});
LassoPath fit_path(const DesignMatrix& X, const Response& y, const LambdaGrid& grid,
                   const PathOptions& options = {}, const StopRule& stop = {});

// Worst stationarity violation of (X, y, lambda) at beta: for active
// coordinates |X_j' r / n - lambda sign(b_j)|, for inactive ones the excess of
// |X_j' r / n| over lambda. Zero at an exact minimizer.
double kkt_violation(const Matrix& X, const Vector& y, double lambda, const Vector& beta);

}  // namespace etlasso
