#include "etlasso/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "etlasso/errors.hpp"
#include "etlasso/rng.hpp"

namespace etlasso {

namespace {

constexpr double kRssFloor = 1e-12;

IndexSet support_of(const Vector& beta) {
  IndexSet s;
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    if (beta[j] != 0.0) s.push_back(static_cast<int>(j));
  return s;
}

// Residual of a sparse coefficient vector, accumulated over its support.
Vector sparse_residual(const Matrix& X, const Vector& y, const Vector& beta) {
  Vector r = y;
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    if (beta[j] != 0.0) r.noalias() -= beta[j] * X.col(j);
  return r;
}

int argmin_score(const std::vector<double>& scores) {
  int best = 0;
  for (int t = 1; t < static_cast<int>(scores.size()); ++t)
    if (scores[static_cast<std::size_t>(t)] < scores[static_cast<std::size_t>(best)]) best = t;
  return best;  // strict comparison: ties keep the larger penalty
}

CriterionTrace degenerate_trace() {
  // Response orthogonal to every column; the all-zero fit is optimal at any
  // penalty and there is nothing to score.
  CriterionTrace trace;
  trace.chosen_index = -1;
  trace.chosen_lambda = 0.0;
  return trace;
}

}  // namespace

CriterionTrace bic_select(const DesignMatrix& X, const Response& y, const GridSpec& grid_spec,
                          const PathOptions& options) {
  if (!X.standardized) throw InvalidInput("design must be standardized");
  const double lmax = lambda_max(X, y);
  if (!(lmax > 0.0)) return degenerate_trace();

  const double n = static_cast<double>(X.rows());
  CriterionTrace trace;
  trace.grid = make_grid(lmax, grid_spec.count, grid_spec.ratio);
  const LassoPath path = fit_path(X, y, trace.grid, options);

  trace.scores.resize(path.coefs.size());
  for (std::size_t t = 0; t < path.coefs.size(); ++t) {
    const Vector r = sparse_residual(X.values, y.values, path.coefs[t]);
    const double rss = std::max(r.squaredNorm(), kRssFloor);
    const double df = static_cast<double>(support_of(path.coefs[t]).size());
    trace.scores[t] = n * std::log(rss / n) + std::log(n) * df;
  }
  trace.chosen_index = argmin_score(trace.scores);
  trace.chosen_lambda = trace.grid.values[static_cast<std::size_t>(trace.chosen_index)];
  trace.chosen_coefs = path.coefs[static_cast<std::size_t>(trace.chosen_index)];
  trace.selected = support_of(trace.chosen_coefs);
  return trace;
}

CriterionTrace cv_select(const DesignMatrix& X, const Response& y, const GridSpec& grid_spec,
                         int folds, std::uint64_t seed, const PathOptions& options) {
  if (!X.standardized) throw InvalidInput("design must be standardized");
  const Eigen::Index n = X.rows();
  if (folds < 2 || folds > n) throw InvalidFoldCount("folds must be in [2, n]");
  const double lmax = lambda_max(X, y);
  if (!(lmax > 0.0)) return degenerate_trace();

  CriterionTrace trace;
  trace.grid = make_grid(lmax, grid_spec.count, grid_spec.ratio);
  const int d = trace.grid.count();

  // Seeded shuffle, then contiguous blocks of near-equal size.
  const std::vector<int> order = Rng(seed).permutation(static_cast<int>(n));
  const Eigen::Index base = n / folds;
  const Eigen::Index remainder = n % folds;

  trace.scores.assign(static_cast<std::size_t>(d), 0.0);
  Eigen::Index offset = 0;
  for (int f = 0; f < folds; ++f) {
    const Eigen::Index held = base + (f < remainder ? 1 : 0);
    const Eigen::Index kept = n - held;

    Matrix X_train(kept, X.cols());
    Vector y_train(kept);
    Matrix X_held(held, X.cols());
    Vector y_held(held);
    for (Eigen::Index i = 0, tr = 0, ho = 0; i < n; ++i) {
      const int row = order[static_cast<std::size_t>(i)];
      if (i >= offset && i < offset + held) {
        X_held.row(ho) = X.values.row(row);
        y_held[ho++] = y.values[row];
      } else {
        X_train.row(tr) = X.values.row(row);
        y_train[tr++] = y.values[row];
      }
    }
    offset += held;

    const LassoPath fold_path = fit_path(X_train, y_train, trace.grid, options);
    for (int t = 0; t < d; ++t) {
      const Vector r = sparse_residual(X_held, y_held, fold_path.coefs[static_cast<std::size_t>(t)]);
      trace.scores[static_cast<std::size_t>(t)] +=
          r.squaredNorm() / static_cast<double>(held) / static_cast<double>(folds);
    }
  }

  trace.chosen_index = argmin_score(trace.scores);
  trace.chosen_lambda = trace.grid.values[static_cast<std::size_t>(trace.chosen_index)];
  const LassoPath full_path = fit_path(X, y, trace.grid, options);
  trace.chosen_coefs = full_path.coefs[static_cast<std::size_t>(trace.chosen_index)];
  trace.selected = support_of(trace.chosen_coefs);
  return trace;
}

}  // namespace etlasso
