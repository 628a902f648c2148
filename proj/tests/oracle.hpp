#pragma once

// Reference implementations used only by tests. Everything here is written
// independently of the library's solver so agreement between the two is
// evidence of correctness rather than of shared bugs: the minimizer is
// proximal-gradient with momentum plus an exact solve on the detected sign
// pattern, and the optimality check recomputes the subgradient condition from
// scratch.

#include <cstdint>

#include "etlasso/rng.hpp"
#include "etlasso/types.hpp"

namespace oracle {

using etlasso::Matrix;
using etlasso::Vector;

double soft_threshold(double z, double t);

// (1/2n) ||y - X b||^2 + lambda ||b||_1
double lasso_objective(const Matrix& X, const Vector& y, double lambda, const Vector& beta);

// Worst violation of the stationarity conditions at beta, recomputed directly
// from the definition.
double kkt_violation(const Matrix& X, const Vector& y, double lambda, const Vector& beta);

struct OracleFit {
  Vector beta;
  double objective = 0.0;
  double kkt = 0.0;
  bool certified = false;  // true when an exact sign-pattern solve verified
};

// Minimizes the lasso objective to high accuracy. Intended for small
// problems; `start` warm-starts the iteration (pass a zero vector otherwise).
OracleFit lasso(const Matrix& X, const Vector& y, double lambda, const Vector& start,
                int max_rounds = 60, double kkt_tol = 1e-11);

// Closed-form solution when the columns of X are orthogonal with squared norm
// n: beta_j = S(X_j' y / n, lambda).
Vector orthogonal_solution(const Matrix& X, const Vector& y, double lambda);

// n-by-p matrix with exactly orthogonal columns, each scaled to squared norm
// n. Requires p <= n.
Matrix random_orthogonal_design(int n, int p, etlasso::Rng& rng);

}  // namespace oracle
