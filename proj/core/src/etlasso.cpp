#include "etlasso/etlasso.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "etlasso/errors.hpp"
#include "etlasso/rng.hpp"
#include "etlasso/standardize.hpp"

namespace etlasso {

PermutationPlan PermutationPlan::make(std::uint64_t seed, int n_rows) {
  if (n_rows < 2) throw InvalidInput("need at least 2 rows to permute");
  PermutationPlan plan;
  plan.seed = seed;
  Rng rng(seed);
  plan.pi1 = rng.permutation(n_rows);
  plan.pi2 = rng.permutation(n_rows);
  while (plan.pi2 == plan.pi1) plan.pi2 = rng.permutation(n_rows);
  return plan;
}

Matrix permute_rows(const Matrix& X, const std::vector<int>& pi) {
  const Eigen::Index n = X.rows();
  if (static_cast<Eigen::Index>(pi.size()) != n)
    throw InvalidPermutation("permutation length does not match row count");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : pi) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw InvalidPermutation("not a bijection on row indices");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  Matrix out(n, X.cols());
  for (Eigen::Index i = 0; i < n; ++i) out.row(i) = X.row(pi[static_cast<std::size_t>(i)]);
  return out;
}

namespace {

struct RaceOutcome {
  IndexSet selected;       // column indices within the real block
  double cutoff = 0.0;
  Vector z_original;
  Vector z_pseudo;
  bool pseudo_activated = false;
  int visited = 0;
  Vector beta_at_stop;     // augmented coefficients at the last visited point
};

// Fits the path of [X_real, X_pseudo] downward until a pseudo column
// activates. The cutoff is the grid value where that happened, and real
// columns are kept only if they entered strictly above it. If no pseudo
// column ever activates, the cutoff is the grid floor and the columns active
// there are kept.
RaceOutcome run_race(const Matrix& X_real, const Matrix& X_pseudo, const Vector& y,
                     const GridSpec& grid_spec, const PathOptions& options) {
  const Eigen::Index m = X_real.cols();
  if (m == 0) throw EmptyDesign("no columns to race");
  if (X_pseudo.rows() != X_real.rows())
    throw DimensionMismatch("pseudo block row count differs from design");

  RaceOutcome out;
  out.z_original = Vector::Zero(m);
  out.z_pseudo = Vector::Zero(X_pseudo.cols());

  Matrix augmented(X_real.rows(), m + X_pseudo.cols());
  augmented.leftCols(m) = X_real;
  augmented.rightCols(X_pseudo.cols()) = X_pseudo;

  const double lmax = lambda_max(augmented, y);
  if (!(lmax > 0.0)) {
    // Response orthogonal to every column: nothing can ever activate.
    out.beta_at_stop = Vector::Zero(m + X_pseudo.cols());
    return out;
  }
  const LambdaGrid grid = make_grid(lmax, grid_spec.count, grid_spec.ratio);

  // Active indices are sorted, so one back() check detects pseudo entries.
  const int first_pseudo = static_cast<int>(m);
  const StopRule stop = [first_pseudo](const std::vector<int>& active) {
    return !active.empty() && active.back() >= first_pseudo;
  };

  const LassoPath path = fit_path(augmented, y, grid, options, stop);
  out.visited = path.n_visited;
  out.pseudo_activated = path.stopped_early;
  out.z_original = path.entry_values.head(m);
  out.z_pseudo = path.entry_values.tail(X_pseudo.cols());
  out.beta_at_stop = path.coefs[static_cast<std::size_t>(path.n_visited - 1)];

  if (out.pseudo_activated) {
    out.cutoff = grid.values[static_cast<std::size_t>(path.n_visited - 1)];
    for (Eigen::Index j = 0; j < m; ++j)
      if (out.z_original[j] > out.cutoff) out.selected.push_back(static_cast<int>(j));
  } else {
    out.cutoff = grid.back();
    for (Eigen::Index j = 0; j < m; ++j)
      if (out.beta_at_stop[j] != 0.0) out.selected.push_back(static_cast<int>(j));
  }
  return out;
}

Matrix gather_columns(const Matrix& X, const IndexSet& subset) {
  Matrix out(X.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i)
    out.col(static_cast<Eigen::Index>(i)) = X.col(subset[i]);
  return out;
}

}  // namespace

StageResult stage_select(const Matrix& X_sub, const Vector& y, const std::vector<int>& pi,
                         const GridSpec& grid, const PathOptions& options) {
  const RaceOutcome race = run_race(X_sub, permute_rows(X_sub, pi), y, grid, options);
  StageResult result;
  result.selected = race.selected;
  result.cutoff = race.cutoff;
  result.z_original = race.z_original;
  result.z_pseudo = race.z_pseudo;
  result.pseudo_activated = race.pseudo_activated;
  result.grid_points_visited = race.visited;
  return result;
}

SelectionResult et_lasso_select(const DesignMatrix& X, const Response& y, std::uint64_t seed,
                                const EtLassoOptions& options) {
  if (!X.standardized) throw InvalidInput("design must be standardized");
  if (y.values.size() != X.rows()) throw DimensionMismatch("response length mismatch");
  const auto start = std::chrono::steady_clock::now();

  SelectionResult result;
  result.plan = PermutationPlan::make(seed, static_cast<int>(X.rows()));

  const RaceOutcome stage1 = run_race(X.values, permute_rows(X.values, result.plan.pi1),
                                      y.values, options.grid, options.path);
  result.stage1_selected = stage1.selected;
  result.cutoff_stage1 = stage1.cutoff;
  result.z_original = stage1.z_original;
  result.z_pseudo = stage1.z_pseudo;

  bool lasso_coefs_available = false;
  Vector lasso_coefs_std;  // per selected column, standardized scale

  if (!stage1.selected.empty()) {
    const Matrix survivors = gather_columns(X.values, stage1.selected);
    const Matrix pseudo2 = options.stage2_full_design
                               ? permute_rows(X.values, result.plan.pi2)
                               : permute_rows(survivors, result.plan.pi2);
    const RaceOutcome stage2 = run_race(survivors, pseudo2, y.values, options.grid, options.path);
    result.cutoff_stage2 = stage2.cutoff;
    result.z_original_stage2 = stage2.z_original;
    result.z_pseudo_stage2 = stage2.z_pseudo;
    result.selected.reserve(stage2.selected.size());
    lasso_coefs_std.resize(static_cast<Eigen::Index>(stage2.selected.size()));
    for (std::size_t i = 0; i < stage2.selected.size(); ++i) {
      result.selected.push_back(stage1.selected[static_cast<std::size_t>(stage2.selected[i])]);
      lasso_coefs_std[static_cast<Eigen::Index>(i)] = stage2.beta_at_stop[stage2.selected[i]];
    }
    lasso_coefs_available = true;
  }

  if (options.refit == EtLassoOptions::Refit::LassoAtCutoff && lasso_coefs_available) {
    auto mapped = to_original_scale(X, y, result.selected, lasso_coefs_std);
    result.coefficients = std::move(mapped.first);
    result.intercept = mapped.second;
  } else {
    auto refit = refit_ols(X, y, result.selected);
    result.coefficients = std::move(refit.first);
    result.intercept = refit.second;
  }

  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::pair<Vector, double> refit_ols(const DesignMatrix& X, const Response& y,
                                    const IndexSet& subset) {
  if (!X.standardized) throw InvalidInput("design must be standardized");
  if (subset.empty()) return {Vector(0), y.mean};
  if (static_cast<Eigen::Index>(subset.size()) >= X.rows())
    throw RankDeficient("more selected columns than rows");
  for (int j : subset)
    if (j < 0 || j >= X.cols()) throw InvalidInput("selected index out of range");

  const Matrix Xs = gather_columns(X.values, subset);
  Eigen::ColPivHouseholderQR<Matrix> qr(Xs);
  if (qr.rank() < Xs.cols()) throw RankDeficient("selected columns are linearly dependent");
  const Vector beta_std = qr.solve(y.values);
  return to_original_scale(X, y, subset, beta_std);
}

double mutual_incoherence(const Matrix& X, const IndexSet& subset) {
  const Eigen::Index p = X.cols();
  if (subset.empty()) throw InvalidInput("support is empty");
  if (static_cast<Eigen::Index>(subset.size()) >= p)
    throw InvalidInput("support must leave at least one feature out");
  std::vector<char> in_subset(static_cast<std::size_t>(p), 0);
  for (int j : subset) {
    if (j < 0 || j >= p) throw InvalidInput("support index out of range");
    in_subset[static_cast<std::size_t>(j)] = 1;
  }
  IndexSet complement;
  complement.reserve(static_cast<std::size_t>(p) - subset.size());
  for (Eigen::Index j = 0; j < p; ++j)
    if (!in_subset[static_cast<std::size_t>(j)]) complement.push_back(static_cast<int>(j));

  const Matrix Xs = gather_columns(X, subset);
  const Matrix Xc = gather_columns(X, complement);
  const Matrix gram = Xs.transpose() * Xs;
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success) throw RankDeficient("support Gram matrix is singular");
  // One column per left-out feature: (X_S' X_S)^{-1} X_S' X_j.
  const Matrix weights = llt.solve(Xs.transpose() * Xc);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < weights.cols(); ++c)
    worst = std::max(worst, weights.col(c).cwiseAbs().sum());
  return worst;
}

double mutual_incoherence(const DesignMatrix& X, const IndexSet& subset) {
  return mutual_incoherence(X.values, subset);
}

}  // namespace etlasso
