#pragma once

#include <cstdint>

#include "etlasso/types.hpp"

namespace etlasso {

// Synthetic sparse regression instances: Gaussian rows with a chosen
// correlation structure, signed-constant coefficients on a small support,
// Gaussian noise.

struct CovarianceSpec {
  enum class Kind { Independent, Ar1, CompoundSymmetric };

  Kind kind = Kind::Independent;
  double rho = 0.0;

  static CovarianceSpec independent() { return {Kind::Independent, 0.0}; }
  static CovarianceSpec ar1(double rho) { return {Kind::Ar1, rho}; }
  static CovarianceSpec compound_symmetric(double rho) { return {Kind::CompoundSymmetric, rho}; }
};

// The explicit p-by-p covariance matrix of the family (identity, rho^|i-j|,
// or constant off-diagonal rho). Validates rho.
Matrix sigma_matrix(const CovarianceSpec& cov, int p);

struct SimConfig {
  int n = 0;
  int p = 0;
  int k = 0;                       // size of the true support
  CovarianceSpec cov;
  double beta_magnitude = 2.0;     // |beta_j| on the support
  double noise_sd = 1.0;
  std::uint64_t seed = 0;

  enum class Placement { First, Random };
  Placement placement = Placement::First;  // support = {0..k-1} or random
};

struct SimInstance {
  Matrix X;
  Vector y;
  IndexSet true_support;
  Vector true_beta;    // length p
};

// Draws an instance deterministically from cfg.seed. Rows are sampled with
// closed-form factors (AR(1) recursion, compound symmetry via a shared
// factor), so no matrix decomposition is involved.
SimInstance sample_instance(const SimConfig& cfg);

}  // namespace etlasso
