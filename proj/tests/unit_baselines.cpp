#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "etlasso/baselines.hpp"
#include "etlasso/errors.hpp"
#include "etlasso/rng.hpp"
#include "etlasso/standardize.hpp"
#include "oracle.hpp"

using etlasso::CriterionTrace;
using etlasso::DesignMatrix;
using etlasso::GridSpec;
using etlasso::IndexSet;
using etlasso::Matrix;
using etlasso::Response;
using etlasso::Vector;

namespace {

struct Standardized {
  DesignMatrix X;
  Response y;
};

Standardized planted(int n, int p, int k, double signal, double noise_sd, std::uint64_t seed) {
  etlasso::Rng rng(seed);
  Matrix X(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = rng.normal();
  Vector y = Vector::Zero(n);
  for (int j = 0; j < k; ++j) y += (j % 2 == 0 ? signal : -signal) * X.col(j);
  for (int i = 0; i < n; ++i) y[i] += noise_sd * rng.normal();
  Standardized out;
  std::tie(out.X, out.y) = etlasso::standardize(X, y);
  return out;
}

IndexSet support_of(const Vector& beta) {
  IndexSet s;
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    if (beta[j] != 0.0) s.push_back(static_cast<int>(j));
  return s;
}

}  // namespace

TEST_CASE("information-criterion scores match a direct recomputation") {
  const Standardized s = planted(60, 12, 3, 1.5, 1.0, 5);
  const GridSpec spec{40, 1e-3};
  const CriterionTrace trace = etlasso::bic_select(s.X, s.y, spec);

  // Recompute every score from an independent path fit over the same grid.
  const double lmax = etlasso::lambda_max(s.X, s.y);
  const etlasso::LambdaGrid grid = etlasso::make_grid(lmax, spec.count, spec.ratio);
  const etlasso::LassoPath path = etlasso::fit_path(s.X, s.y, grid);
  const double n = static_cast<double>(s.X.rows());

  REQUIRE(trace.scores.size() == 40);
  for (int t = 0; t < 40; ++t) {
    Vector r = s.y.values;
    int df = 0;
    for (Eigen::Index j = 0; j < 12; ++j) {
      if (path.coefs[t][j] != 0.0) {
        r -= path.coefs[t][j] * s.X.values.col(j);
        ++df;
      }
    }
    const double rss = std::max(r.squaredNorm(), 1e-12);
    const double expected = n * std::log(rss / n) + std::log(n) * df;
    CHECK(trace.scores[t] == doctest::Approx(expected).epsilon(1e-12));
  }

  // The chosen index is the first global minimizer, i.e. ties keep the
  // larger penalty.
  REQUIRE(trace.chosen_index >= 0);
  for (int t = 0; t < 40; ++t) {
    CHECK(trace.scores[trace.chosen_index] <= trace.scores[t]);
    if (t < trace.chosen_index) CHECK(trace.scores[t] > trace.scores[trace.chosen_index]);
  }
  CHECK(trace.chosen_lambda == trace.grid.values[static_cast<std::size_t>(trace.chosen_index)]);
  CHECK(trace.selected == support_of(trace.chosen_coefs));
}

TEST_CASE("the information criterion finds a strong planted support") {
  const Standardized s = planted(150, 25, 3, 2.0, 1.0, 5);
  const CriterionTrace trace = etlasso::bic_select(s.X, s.y);
  CHECK(trace.selected == IndexSet{0, 1, 2});
}

TEST_CASE("cross-validation scores match a fold-by-fold reference") {
  const int n = 36, p = 6, folds = 3;
  const Standardized s = planted(n, p, 2, 1.5, 0.7, 13);
  const GridSpec spec{12, 1e-2};
  const std::uint64_t seed = 77;
  const CriterionTrace trace = etlasso::cv_select(s.X, s.y, spec, folds, seed);

  const double lmax = etlasso::lambda_max(s.X, s.y);
  const etlasso::LambdaGrid grid = etlasso::make_grid(lmax, spec.count, spec.ratio);
  REQUIRE(trace.grid.values == grid.values);

  // Same shuffle, same contiguous blocks, but each fold problem is solved by
  // the independent reference minimizer instead of the library solver.
  const std::vector<int> order = etlasso::Rng(seed).permutation(n);
  const int base = n / folds, remainder = n % folds;
  std::vector<double> scores(12, 0.0);
  int offset = 0;
  for (int f = 0; f < folds; ++f) {
    const int held = base + (f < remainder ? 1 : 0);
    Matrix X_train(n - held, p), X_held(held, p);
    Vector y_train(n - held), y_held(held);
    for (int i = 0, tr = 0, ho = 0; i < n; ++i) {
      const int row = order[static_cast<std::size_t>(i)];
      if (i >= offset && i < offset + held) {
        X_held.row(ho) = s.X.values.row(row);
        y_held[ho++] = s.y.values[row];
      } else {
        X_train.row(tr) = s.X.values.row(row);
        y_train[tr++] = s.y.values[row];
      }
    }
    offset += held;
    Vector warm = Vector::Zero(p);
    for (int t = 0; t < 12; ++t) {
      const auto fit = oracle::lasso(X_train, y_train, grid.values[t], warm);
      warm = fit.beta;
      scores[static_cast<std::size_t>(t)] +=
          (y_held - X_held * fit.beta).squaredNorm() / held / folds;
    }
  }

  for (int t = 0; t < 12; ++t)
    CHECK(trace.scores[t] == doctest::Approx(scores[static_cast<std::size_t>(t)]).epsilon(1e-5));
  const double ref_min = *std::min_element(scores.begin(), scores.end());
  CHECK(trace.scores[trace.chosen_index] <= ref_min + 1e-6);
}

TEST_CASE("cross-validation recovers a strong support and reports the full-data fit") {
  const Standardized s = planted(100, 15, 3, 2.0, 0.7, 21);
  const CriterionTrace trace = etlasso::cv_select(s.X, s.y, {}, 5, 3);
  REQUIRE(trace.chosen_index >= 0);
  const IndexSet truth = {0, 1, 2};
  CHECK(std::includes(trace.selected.begin(), trace.selected.end(), truth.begin(), truth.end()));
  CHECK(trace.selected == support_of(trace.chosen_coefs));
  CHECK(trace.chosen_lambda == trace.grid.values[static_cast<std::size_t>(trace.chosen_index)]);
}

TEST_CASE("cross-validation is deterministic in its seed") {
  const Standardized s = planted(50, 10, 2, 1.0, 1.0, 33);
  const CriterionTrace a = etlasso::cv_select(s.X, s.y, {}, 4, 11);
  const CriterionTrace b = etlasso::cv_select(s.X, s.y, {}, 4, 11);
  CHECK(a.scores == b.scores);
  CHECK(a.chosen_index == b.chosen_index);
  CHECK(a.selected == b.selected);
  // A different seed reshuffles the folds and moves the score curve.
  const CriterionTrace c = etlasso::cv_select(s.X, s.y, {}, 4, 12);
  CHECK(a.scores != c.scores);
}

TEST_CASE("fold counts outside [2, n] are rejected") {
  const Standardized s = planted(20, 5, 1, 1.0, 0.5, 41);
  CHECK_THROWS_AS(etlasso::cv_select(s.X, s.y, {}, 1, 1), etlasso::InvalidFoldCount);
  CHECK_THROWS_AS(etlasso::cv_select(s.X, s.y, {}, 21, 1), etlasso::InvalidFoldCount);
  CHECK_NOTHROW(etlasso::cv_select(s.X, s.y, {}, 20, 1));  // leave-one-out
}

TEST_CASE("a response orthogonal to the design yields the degenerate trace") {
  // y is identically zero after centering, so no penalty can activate
  // anything and both selectors return the empty model.
  etlasso::Rng rng(51);
  Matrix X(30, 4);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 30; ++i) X(i, j) = rng.normal();
  const Vector y = Vector::Constant(30, 3.5);
  const auto [Xs, ys] = etlasso::standardize(X, y);

  const CriterionTrace bic = etlasso::bic_select(Xs, ys);
  CHECK(bic.chosen_index == -1);
  CHECK(bic.selected.empty());
  CHECK(bic.scores.empty());

  const CriterionTrace cv = etlasso::cv_select(Xs, ys, {}, 5, 1);
  CHECK(cv.chosen_index == -1);
  CHECK(cv.selected.empty());
}
