#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "etlasso/errors.hpp"
#include "etlasso/etlasso.hpp"
#include "etlasso/rng.hpp"
#include "etlasso/standardize.hpp"
#include "oracle.hpp"

using etlasso::DesignMatrix;
using etlasso::IndexSet;
using etlasso::Matrix;
using etlasso::PermutationPlan;
using etlasso::Response;
using etlasso::Vector;

namespace {

struct Standardized {
  DesignMatrix X;
  Response y;
  Matrix X_raw;
  Vector y_raw;
};

Standardized planted(int n, int p, int k, double signal, double noise_sd, std::uint64_t seed) {
  etlasso::Rng rng(seed);
  Standardized out;
  out.X_raw.resize(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) out.X_raw(i, j) = rng.normal();
  out.y_raw = Vector::Zero(n);
  for (int j = 0; j < k; ++j)
    out.y_raw += (j % 2 == 0 ? signal : -signal) * out.X_raw.col(j);
  for (int i = 0; i < n; ++i) out.y_raw[i] += noise_sd * rng.normal();
  std::tie(out.X, out.y) = etlasso::standardize(out.X_raw, out.y_raw);
  return out;
}

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

TEST_CASE("permutation plans are deterministic and internally distinct") {
  const PermutationPlan a = PermutationPlan::make(99, 64);
  const PermutationPlan b = PermutationPlan::make(99, 64);
  CHECK(a.pi1 == b.pi1);
  CHECK(a.pi2 == b.pi2);
  CHECK(a.pi1 != a.pi2);
  CHECK(a.seed == 99);

  std::vector<int> sorted = a.pi1;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 64; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);

  CHECK(PermutationPlan::make(1, 64).pi1 != PermutationPlan::make(2, 64).pi1);
  CHECK_THROWS_AS(PermutationPlan::make(1, 1), etlasso::InvalidInput);
}

TEST_CASE("permute_rows applies the permutation and validates it") {
  Matrix X(3, 2);
  X << 1, 2, 3, 4, 5, 6;
  const Matrix P = etlasso::permute_rows(X, {2, 0, 1});
  CHECK(P(0, 0) == 5);
  CHECK(P(0, 1) == 6);
  CHECK(P(1, 0) == 1);
  CHECK(P(2, 0) == 3);

  CHECK_THROWS_AS(etlasso::permute_rows(X, {0, 1}), etlasso::InvalidPermutation);
  CHECK_THROWS_AS(etlasso::permute_rows(X, {0, 0, 1}), etlasso::InvalidPermutation);
  CHECK_THROWS_AS(etlasso::permute_rows(X, {0, 1, 3}), etlasso::InvalidPermutation);
  CHECK_THROWS_AS(etlasso::permute_rows(X, {0, 1, -1}), etlasso::InvalidPermutation);
}

TEST_CASE("row permutation leaves the Gram matrix unchanged") {
  const Standardized s = planted(50, 8, 2, 2.0, 1.0, 7);
  const Matrix gram = s.X.values.transpose() * s.X.values;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto pi = etlasso::Rng(seed).permutation(50);
    const Matrix Xp = etlasso::permute_rows(s.X.values, pi);
    const Matrix gram_p = Xp.transpose() * Xp;
    CHECK((gram_p - gram).lpNorm<Eigen::Infinity>() <= 1e-12);
    // Columns keep their values as multisets, so means and norms survive too.
    CHECK(Xp.col(0).squaredNorm() == doctest::Approx(s.X.values.col(0).squaredNorm()));
  }
}

TEST_CASE("a noiseless two-feature response rides the path to the floor") {
  // y = 3 x1 - 2 x2 exactly: both features activate at the top of the grid,
  // the residual is driven to zero, and no permuted column ever activates.
  etlasso::Rng rng(17);
  const int n = 50;
  Matrix X(n, 2);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = rng.normal();
    X(i, 1) = rng.normal();
  }
  const Vector y = 3.0 * X.col(0) - 2.0 * X.col(1);
  const auto [Xs, ys] = etlasso::standardize(X, y);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto pi = etlasso::Rng(seed).permutation(n);
    const auto stage = etlasso::stage_select(Xs.values, ys.values, pi);
    CHECK_FALSE(stage.pseudo_activated);
    CHECK(stage.selected == IndexSet{0, 1});
    CHECK(stage.z_pseudo.lpNorm<Eigen::Infinity>() == 0.0);
    // No pseudo entry: the cutoff falls back to the grid floor.
    const double lmax_aug = [&] {
      Matrix aug(n, 4);
      aug.leftCols(2) = Xs.values;
      aug.rightCols(2) = etlasso::permute_rows(Xs.values, pi);
      return etlasso::lambda_max(aug, ys.values);
    }();
    CHECK(stage.cutoff == doctest::Approx(lmax_aug * 1e-3).epsilon(1e-12));
  }
}

TEST_CASE("strong planted signals are recovered exactly end to end") {
  for (std::uint64_t seed : {2, 5, 16}) {
    const Standardized s = planted(120, 30, 3, 2.0, 1.0, seed);
    const auto result = etlasso::et_lasso_select(s.X, s.y, seed + 1);
    CHECK(result.selected == IndexSet{0, 1, 2});
    CHECK(is_subset(result.selected, result.stage1_selected));
    CHECK(result.cutoff_stage1 > 0.0);
    CHECK(result.wall_time_s >= 0.0);
    REQUIRE(result.coefficients.size() == 3);
    // OLS refit on the true support of a lightly noised signal: near truth.
    CHECK(result.coefficients[0] == doctest::Approx(2.0).epsilon(0.2));
    CHECK(result.coefficients[1] == doctest::Approx(-2.0).epsilon(0.2));
    CHECK(result.coefficients[2] == doctest::Approx(2.0).epsilon(0.2));
  }
}

TEST_CASE("selection results are reproducible for a fixed seed") {
  const Standardized s = planted(80, 40, 3, 1.5, 1.0, 23);
  const auto a = etlasso::et_lasso_select(s.X, s.y, 5);
  const auto b = etlasso::et_lasso_select(s.X, s.y, 5);
  CHECK(a.selected == b.selected);
  CHECK(a.cutoff_stage1 == b.cutoff_stage1);
  CHECK(a.cutoff_stage2 == b.cutoff_stage2);
  CHECK((a.z_original - b.z_original).lpNorm<Eigen::Infinity>() == 0.0);
  for (Eigen::Index i = 0; i < a.coefficients.size(); ++i)
    CHECK(a.coefficients[i] == b.coefficients[i]);
}

TEST_CASE("a constant response short-circuits to the empty model") {
  const Standardized s = planted(40, 10, 0, 0.0, 0.0, 31);
  // k = 0 and noise_sd = 0 makes y identically zero after centering.
  const auto result = etlasso::et_lasso_select(s.X, s.y, 3);
  CHECK(result.selected.empty());
  CHECK(result.stage1_selected.empty());
  CHECK(result.cutoff_stage1 == 0.0);
  CHECK(result.coefficients.size() == 0);
  CHECK(result.intercept == doctest::Approx(s.y.mean));
}

TEST_CASE("stage two refines within the stage-one survivors") {
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    const Standardized s = planted(60, 80, 4, 1.0, 2.0, seed * 13 + 1);
    const auto result = etlasso::et_lasso_select(s.X, s.y, seed);
    CHECK(is_subset(result.selected, result.stage1_selected));
    CHECK(result.z_original.size() == 80);
    CHECK(result.z_original_stage2.size() ==
          static_cast<Eigen::Index>(result.stage1_selected.size()));
  }
}

TEST_CASE("the full-design stage-two variant still refines the survivors") {
  const Standardized s = planted(60, 80, 4, 1.0, 2.0, 40);
  etlasso::EtLassoOptions options;
  options.stage2_full_design = true;
  const auto result = etlasso::et_lasso_select(s.X, s.y, 9, options);
  CHECK(is_subset(result.selected, result.stage1_selected));
}

TEST_CASE("refit modes share the selection but differ in shrinkage") {
  const Standardized s = planted(100, 20, 3, 2.0, 0.5, 57);
  etlasso::EtLassoOptions ols_mode;
  etlasso::EtLassoOptions lasso_mode;
  lasso_mode.refit = etlasso::EtLassoOptions::Refit::LassoAtCutoff;
  const auto a = etlasso::et_lasso_select(s.X, s.y, 5, ols_mode);
  const auto b = etlasso::et_lasso_select(s.X, s.y, 5, lasso_mode);
  REQUIRE(a.selected == b.selected);
  REQUIRE(a.coefficients.size() == b.coefficients.size());
  bool any_difference = false;
  for (Eigen::Index i = 0; i < a.coefficients.size(); ++i)
    any_difference = any_difference || a.coefficients[i] != b.coefficients[i];
  CHECK(any_difference);  // the penalized fit is shrunken, the refit is not
}

TEST_CASE("refit_ols reproduces the least-squares solution and flags rank problems") {
  etlasso::Rng rng(61);
  const int n = 30;
  Matrix X(n, 4);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = rng.normal();
  const Vector y = 3.0 * X.col(0) - 2.0 * X.col(2) + Vector::Constant(n, 7.0);
  const auto [Xs, ys] = etlasso::standardize(X, y);

  const auto [beta, intercept] = etlasso::refit_ols(Xs, ys, {0, 2});
  CHECK(beta[0] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(beta[1] == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(intercept == doctest::Approx(7.0).epsilon(1e-10));

  const auto [beta0, intercept0] = etlasso::refit_ols(Xs, ys, {});
  CHECK(beta0.size() == 0);
  CHECK(intercept0 == doctest::Approx(y.mean()));

  Matrix Xdup = X;
  Xdup.col(3) = 2.0 * X.col(0);
  const auto [Xds, yds] = etlasso::standardize(Xdup, y);
  CHECK_THROWS_AS(etlasso::refit_ols(Xds, yds, {0, 3}), etlasso::RankDeficient);
  CHECK_THROWS_AS(etlasso::refit_ols(Xds, yds, {0, 7}), etlasso::InvalidInput);

  const Standardized tiny = planted(4, 6, 1, 1.0, 0.1, 3);
  CHECK_THROWS_AS(etlasso::refit_ols(tiny.X, tiny.y, {0, 1, 2, 3}), etlasso::RankDeficient);
}

TEST_CASE("mutual incoherence is near zero for orthogonal designs and exact in general") {
  etlasso::Rng rng(71);
  const Matrix Q = oracle::random_orthogonal_design(24, 6, rng);
  CHECK(etlasso::mutual_incoherence(Q, {0, 1}) <= 1e-10);

  Matrix X(5, 3);
  X << 1, 0, 1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0;
  const IndexSet support = {0, 1};
  // Direct computation: || (X_S' X_S)^{-1} X_S' X_2 ||_1.
  Matrix Xs(5, 2);
  Xs.col(0) = X.col(0);
  Xs.col(1) = X.col(1);
  const Vector w = (Xs.transpose() * Xs).ldlt().solve(Xs.transpose() * X.col(2));
  CHECK(etlasso::mutual_incoherence(X, support) ==
        doctest::Approx(w.cwiseAbs().sum()).epsilon(1e-12));

  CHECK_THROWS_AS(etlasso::mutual_incoherence(X, {}), etlasso::InvalidInput);
  CHECK_THROWS_AS(etlasso::mutual_incoherence(X, {0, 1, 2}), etlasso::InvalidInput);
  Matrix Xsing(5, 3);
  Xsing.col(0) = X.col(0);
  Xsing.col(1) = X.col(0);
  Xsing.col(2) = X.col(2);
  CHECK_THROWS_AS(etlasso::mutual_incoherence(Xsing, {0, 1}), etlasso::RankDeficient);
}
