#include "etlasso/lasso_path.hpp"

#include <algorithm>
#include <cmath>

#include "etlasso/errors.hpp"

namespace etlasso {

namespace {

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

void check_shapes(const Matrix& X, const Vector& y) {
  if (y.size() != X.rows())
    throw DimensionMismatch("response length " + std::to_string(y.size()) +
                            " does not match " + std::to_string(X.rows()) + " rows");
  if (X.cols() == 0) throw EmptyDesign("design has no columns");
}

}  // namespace

double lambda_max(const Matrix& X, const Vector& y) {
  check_shapes(X, y);
  // Same per-column expression the coordinate sweep evaluates, so the
  // all-zero solution at this penalty is exact rather than within rounding.
  const double inv_n = 1.0 / static_cast<double>(X.rows());
  double m = 0.0;
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    m = std::max(m, std::abs(inv_n * X.col(j).dot(y)));
  return m;
}

double lambda_max(const DesignMatrix& X, const Response& y) {
  if (!X.standardized) throw InvalidInput("design must be standardized");
  return lambda_max(X.values, y.values);
}

LambdaGrid make_grid(double lmax, int count, double ratio) {
  if (!(lmax > 0.0)) throw InvalidGridSpec("grid requires a positive maximum penalty");
  if (count < 2) throw InvalidGridSpec("grid needs at least 2 points");
  if (!(ratio > 0.0) || !(ratio < 1.0)) throw InvalidGridSpec("grid ratio must be in (0, 1)");
  LambdaGrid grid;
  grid.ratio = ratio;
  grid.values.resize(static_cast<std::size_t>(count));
  const double step = std::log(ratio) / static_cast<double>(count - 1);
  for (int t = 0; t < count; ++t)
    grid.values[static_cast<std::size_t>(t)] = lmax * std::exp(step * t);
  grid.values.front() = lmax;
  grid.values.back() = lmax * ratio;
  return grid;
}

LassoPath fit_path(const Matrix& X, const Vector& y, const LambdaGrid& grid,
                   const PathOptions& options, const StopRule& stop) {
  check_shapes(X, y);
  const int d = grid.count();
  if (d < 1) throw InvalidGridSpec("empty penalty grid");
  for (int t = 1; t < d; ++t)
    if (!(grid.values[t] < grid.values[t - 1]) || !(grid.values[t] > 0.0))
      throw InvalidGridSpec("grid must be strictly decreasing and positive");

  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  // (1/n) ||X_j||^2; exactly 1 for standardized columns, but kept general so
  // row subsets (cross-validation folds) solve the right problem too.
  Vector col_scale(p);
  for (Eigen::Index j = 0; j < p; ++j) col_scale[j] = inv_n * X.col(j).squaredNorm();

  LassoPath path;
  path.grid = grid;
  path.coefs.assign(static_cast<std::size_t>(d), Vector::Zero(p));
  path.entry_values = Vector::Zero(p);
  path.converged.assign(static_cast<std::size_t>(d), 0);
  path.iterations.assign(static_cast<std::size_t>(d), 0);
  path.visited.assign(static_cast<std::size_t>(d), 0);

  Vector beta = Vector::Zero(p);
  Vector residual = y;
  std::vector<int> active;
  active.reserve(static_cast<std::size_t>(std::min<Eigen::Index>(n, p)));

  auto update = [&](Eigen::Index j, double lam) -> double {
    const double cj = col_scale[j];
    if (cj <= 0.0) return 0.0;
    const double grad = inv_n * X.col(j).dot(residual);
    const double next = soft_threshold(grad + cj * beta[j], lam) / cj;
    const double delta = next - beta[j];
    if (delta != 0.0) {
      residual.noalias() -= delta * X.col(j);
      beta[j] = next;
    }
    return std::abs(delta);
  };

  // Near the bottom of the grid on p > n designs, cyclic descent crawls:
  // thousands of sweeps go into flat directions of a nearly singular active
  // subproblem. Once a point has burned kAccelAfter sweeps we instead solve
  // the subproblem restricted to the current sign pattern exactly (Gram
  // system via LDLT) and accept the candidate only with the full battery of
  // checks: clean linear solve, strict sign consistency, no objective
  // increase, and a stationarity certificate at least as strong as the one
  // the polishing sweep implies. On failure the sweeps simply continue; the
  // Gram columns are cached across grid points since the active set grows
  // down the path.
  constexpr int kAccelAfter = 25;
  std::vector<int> gram_pos(static_cast<std::size_t>(p), -1);
  std::vector<int> gram_feats;
  Matrix gram;
  Vector gram_q;

  auto gram_ensure = [&](const std::vector<int>& feats) {
    for (int j : feats) {
      if (gram_pos[static_cast<std::size_t>(j)] >= 0) continue;
      const Eigen::Index m = static_cast<Eigen::Index>(gram_feats.size());
      if (gram.rows() <= m) {
        const Eigen::Index grown = std::min<Eigen::Index>(p, std::max<Eigen::Index>(64, 2 * gram.rows() + 64));
        Matrix bigger(grown, grown);
        bigger.topLeftCorner(m, m) = gram.topLeftCorner(m, m);
        gram.swap(bigger);
        gram_q.conservativeResize(grown);
      }
      for (Eigen::Index t = 0; t < m; ++t) {
        const double v = inv_n * X.col(gram_feats[static_cast<std::size_t>(t)]).dot(X.col(j));
        gram(t, m) = v;
        gram(m, t) = v;
      }
      gram(m, m) = col_scale[j];
      gram_q[m] = inv_n * X.col(j).dot(y);
      gram_pos[static_cast<std::size_t>(j)] = static_cast<int>(m);
      gram_feats.push_back(j);
    }
  };

  // state: +1/-1 = in the working set with that sign, 0 = out.
  std::vector<signed char> accel_state(static_cast<std::size_t>(p), 0);
  std::vector<int> accel_idx, accel_seed;
  auto try_exact_solve = [&](double lam) -> bool {
    accel_seed.clear();
    for (Eigen::Index j = 0; j < p; ++j) {
      accel_state[static_cast<std::size_t>(j)] =
          beta[j] > 0.0 ? 1 : (beta[j] < 0.0 ? -1 : 0);
      if (beta[j] != 0.0) accel_seed.push_back(static_cast<int>(j));
    }
    if (accel_seed.empty()) return false;
    const double kkt_bar = 10.0 * options.tol;
    const double obj_cur = 0.5 * inv_n * residual.squaredNorm() + lam * beta.lpNorm<1>();

    Vector cand, r_cand;
    for (int outer = 0; outer < 12; ++outer) {
      accel_idx.clear();
      for (Eigen::Index j = 0; j < p; ++j)
        if (accel_state[static_cast<std::size_t>(j)] != 0)
          accel_idx.push_back(static_cast<int>(j));
      if (accel_idx.empty() || static_cast<Eigen::Index>(accel_idx.size()) > n) return false;
      gram_ensure(accel_idx);

      // Solve on the working set's sign pattern; coordinates whose solution
      // flips sign are stragglers the exact solution zeroes out, so drop
      // them and re-solve on the smaller pattern.
      bool settled = false;
      for (int round = 0; round < 8 && !settled; ++round) {
        const int m = static_cast<int>(accel_idx.size());
        if (m == 0) return false;
        Matrix G(m, m);
        Vector rhs(m);
        for (int a = 0; a < m; ++a) {
          const int ja = accel_idx[static_cast<std::size_t>(a)];
          const int pa = gram_pos[static_cast<std::size_t>(ja)];
          rhs[a] = gram_q[pa] - lam * accel_state[static_cast<std::size_t>(ja)];
          for (int b = 0; b <= a; ++b) {
            const int pb = gram_pos[static_cast<std::size_t>(accel_idx[static_cast<std::size_t>(b)])];
            const double v = gram(pb, pa);
            G(a, b) = v;
            G(b, a) = v;
          }
        }
        const Eigen::LDLT<Matrix> ldlt(G);
        if (ldlt.info() != Eigen::Success) return false;
        cand = ldlt.solve(rhs);
        cand += ldlt.solve(rhs - G * cand);  // one step of iterative refinement
        if (!cand.allFinite()) return false;

        settled = true;
        std::vector<int> keep;
        keep.reserve(accel_idx.size());
        for (int a = 0; a < m; ++a) {
          const int ja = accel_idx[static_cast<std::size_t>(a)];
          if (cand[a] * accel_state[static_cast<std::size_t>(ja)] > 0.0) {
            keep.push_back(ja);
          } else {
            accel_state[static_cast<std::size_t>(ja)] = 0;
            settled = false;
          }
        }
        if (!settled) {
          if (round == 7) return false;
          accel_idx.swap(keep);
        }
      }
      const int m = static_cast<int>(accel_idx.size());

      r_cand = y;
      for (int a = 0; a < m; ++a)
        r_cand.noalias() -= cand[a] * X.col(accel_idx[static_cast<std::size_t>(a)]);

      // Direct stationarity check; violating outside coordinates join the
      // working set (with the sign the gradient asks for) and we re-solve.
      double worst = 0.0;
      bool grew = false;
      int in_a = 0;
      for (Eigen::Index j = 0; j < p; ++j) {
        const double g = inv_n * X.col(j).dot(r_cand);
        if (in_a < m && accel_idx[static_cast<std::size_t>(in_a)] == static_cast<int>(j)) {
          worst = std::max(worst, std::abs(g - lam * accel_state[static_cast<std::size_t>(j)]));
          ++in_a;
        } else if (std::abs(g) - lam > kkt_bar) {
          accel_state[static_cast<std::size_t>(j)] = g > 0.0 ? 1 : -1;
          grew = true;
        }
      }
      if (grew) continue;
      if (worst > kkt_bar) return false;
      const double obj_cand = 0.5 * inv_n * r_cand.squaredNorm() + lam * cand.lpNorm<1>();
      if (obj_cand > obj_cur + 1e-12 * (1.0 + std::abs(obj_cur))) return false;

      for (int j : accel_seed) beta[j] = 0.0;
      for (int a = 0; a < m; ++a) beta[accel_idx[static_cast<std::size_t>(a)]] = cand[a];
      residual.swap(r_cand);
      return true;
    }
    return false;
  };

  for (int t = 0; t < d; ++t) {
    const double lam = grid.values[static_cast<std::size_t>(t)];
    int sweeps = 0;
    int next_attempt = kAccelAfter;
    bool ok = false;
    while (sweeps < options.max_iter) {
      double full_delta = 0.0;
      for (Eigen::Index j = 0; j < p; ++j) full_delta = std::max(full_delta, update(j, lam));
      ++sweeps;
      if (full_delta <= options.tol) {
        if (sweeps >= options.max_iter) break;
        // One polishing sweep; requiring two consecutive quiet full sweeps
        // keeps the stationarity violation well inside the tolerance.
        double polish_delta = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) polish_delta = std::max(polish_delta, update(j, lam));
        ++sweeps;
        if (polish_delta <= options.tol) {
          ok = true;
          break;
        }
        continue;
      }
      if (sweeps >= next_attempt) {
        if (try_exact_solve(lam)) {
          ok = true;
          break;
        }
        next_attempt = 2 * sweeps;
      }
      while (sweeps < options.max_iter) {
        double active_delta = 0.0;
        for (Eigen::Index j = 0; j < p; ++j)
          if (beta[j] != 0.0) active_delta = std::max(active_delta, update(j, lam));
        ++sweeps;
        if (active_delta <= options.tol) break;
        if (sweeps >= next_attempt) {
          if (try_exact_solve(lam)) {
            ok = true;
            break;
          }
          next_attempt = 2 * sweeps;
        }
      }
      if (ok) break;
    }

    path.coefs[static_cast<std::size_t>(t)] = beta;
    path.converged[static_cast<std::size_t>(t)] = ok ? 1 : 0;
    path.iterations[static_cast<std::size_t>(t)] = sweeps;
    path.visited[static_cast<std::size_t>(t)] = 1;
    path.n_visited = t + 1;

    active.clear();
    for (Eigen::Index j = 0; j < p; ++j) {
      if (beta[j] != 0.0) {
        active.push_back(static_cast<int>(j));
        if (path.entry_values[j] == 0.0) path.entry_values[j] = lam;
      }
    }
    if (stop && stop(active)) {
      path.stopped_early = true;
      break;
    }
  }
  return path;
}

LassoPath fit_path(const DesignMatrix& X, const Response& y, const LambdaGrid& grid,
                   const PathOptions& options, const StopRule& stop) {
  if (!X.standardized) throw InvalidInput("design must be standardized");
  return fit_path(X.values, y.values, grid, options, stop);
}

double kkt_violation(const Matrix& X, const Vector& y, double lambda, const Vector& beta) {
  check_shapes(X, y);
  if (beta.size() != X.cols()) throw DimensionMismatch("coefficient length does not match columns");
  const double inv_n = 1.0 / static_cast<double>(X.rows());
  const Vector residual = y - X * beta;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double g = inv_n * X.col(j).dot(residual);
    if (beta[j] != 0.0)
      worst = std::max(worst, std::abs(g - lambda * (beta[j] > 0.0 ? 1.0 : -1.0)));
    else
      worst = std::max(worst, std::max(0.0, std::abs(g) - lambda));
  }
  return worst;
}

}  // namespace etlasso
