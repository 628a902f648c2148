#include "etlasso/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "etlasso/errors.hpp"
#include "etlasso/rng.hpp"

namespace etlasso {

namespace {

void validate_cov(const CovarianceSpec& cov) {
  switch (cov.kind) {
    case CovarianceSpec::Kind::Independent:
      break;
    case CovarianceSpec::Kind::Ar1:
      if (!(cov.rho > -1.0) || !(cov.rho < 1.0))
        throw InvalidRho("AR(1) correlation must be in (-1, 1)");
      break;
    case CovarianceSpec::Kind::CompoundSymmetric:
      if (!(cov.rho >= 0.0) || !(cov.rho < 1.0))
        throw InvalidRho("compound-symmetric correlation must be in [0, 1)");
      break;
  }
}

}  // namespace

Matrix sigma_matrix(const CovarianceSpec& cov, int p) {
  if (p < 1) throw InvalidInput("dimension must be positive");
  validate_cov(cov);
  Matrix sigma(p, p);
  switch (cov.kind) {
    case CovarianceSpec::Kind::Independent:
      sigma.setIdentity();
      break;
    case CovarianceSpec::Kind::Ar1:
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) sigma(i, j) = std::pow(cov.rho, std::abs(i - j));
      break;
    case CovarianceSpec::Kind::CompoundSymmetric:
      sigma.setConstant(cov.rho);
      sigma.diagonal().setOnes();
      break;
  }
  return sigma;
}

SimInstance sample_instance(const SimConfig& cfg) {
  if (cfg.n < 2) throw InvalidInput("need at least 2 observations");
  if (cfg.p < 1) throw InvalidInput("need at least 1 feature");
  if (cfg.k < 0 || cfg.k > cfg.p) throw InvalidInput("support size must be in [0, p]");
  if (!(cfg.noise_sd >= 0.0)) throw InvalidInput("noise level must be nonnegative");
  validate_cov(cfg.cov);

  Rng rng(cfg.seed);
  SimInstance inst;
  inst.X.resize(cfg.n, cfg.p);

  // Rows are drawn one at a time, features in order, so the draw sequence is
  // part of the generator contract. AR(1) uses its recursion; compound
  // symmetry splits each entry into a shared and an idiosyncratic factor.
  switch (cfg.cov.kind) {
    case CovarianceSpec::Kind::Independent:
      for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.p; ++j) inst.X(i, j) = rng.normal();
      break;
    case CovarianceSpec::Kind::Ar1: {
      const double carry = cfg.cov.rho;
      const double fresh = std::sqrt(1.0 - carry * carry);
      for (int i = 0; i < cfg.n; ++i) {
        double prev = rng.normal();
        inst.X(i, 0) = prev;
        for (int j = 1; j < cfg.p; ++j) {
          prev = carry * prev + fresh * rng.normal();
          inst.X(i, j) = prev;
        }
      }
      break;
    }
    case CovarianceSpec::Kind::CompoundSymmetric: {
      const double shared = std::sqrt(cfg.cov.rho);
      const double own = std::sqrt(1.0 - cfg.cov.rho);
      for (int i = 0; i < cfg.n; ++i) {
        const double z0 = rng.normal();
        for (int j = 0; j < cfg.p; ++j) inst.X(i, j) = shared * z0 + own * rng.normal();
      }
      break;
    }
  }

  if (cfg.placement == SimConfig::Placement::First) {
    for (int j = 0; j < cfg.k; ++j) inst.true_support.push_back(j);
  } else {
    std::vector<int> order = rng.permutation(cfg.p);
    order.resize(static_cast<std::size_t>(cfg.k));
    std::sort(order.begin(), order.end());
    inst.true_support = std::move(order);
  }

  inst.true_beta = Vector::Zero(cfg.p);
  for (int j : inst.true_support) {
    const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
    inst.true_beta[j] = sign * cfg.beta_magnitude;
  }

  inst.y.resize(cfg.n);
  for (int i = 0; i < cfg.n; ++i) inst.y[i] = cfg.noise_sd * rng.normal();
  for (int j : inst.true_support) inst.y.noalias() += inst.true_beta[j] * inst.X.col(j);

  return inst;
}

}  // namespace etlasso
