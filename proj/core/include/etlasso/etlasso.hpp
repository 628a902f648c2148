#pragma once

#include <cstdint>
#include <vector>

#include "etlasso/lasso_path.hpp"
#include "etlasso/types.hpp"

namespace etlasso {

// Two-stage feature selection that picks the Lasso penalty by racing real
// columns against row-permuted copies of themselves. A permuted column keeps
// its marginal distribution and the design's Gram matrix but is independent
// of the response, so the penalty level at which the first permuted column
// enters the path estimates the level below which entries are spurious.
// Stage one screens the full design; stage two repeats the race among the
// stage-one survivors with a fresh permutation.

// Two row permutations drawn from one seed; the second is redrawn until it
// differs from the first.
struct PermutationPlan {
  std::uint64_t seed = 0;
  std::vector<int> pi1;
  std::vector<int> pi2;

  static PermutationPlan make(std::uint64_t seed, int n_rows);
};

// Returns the matrix whose row i is row pi[i] of X.
Matrix permute_rows(const Matrix& X, const std::vector<int>& pi);

// One race: fit the path of [X_sub, X_sub permuted] until a permuted column
// activates. Indices in `selected` refer to the columns of X_sub.
struct StageResult {
  IndexSet selected;
  double cutoff = 0.0;
  Vector z_original;       // entry values of the real columns
  Vector z_pseudo;         // entry values of the permuted columns
  bool pseudo_activated = false;
  int grid_points_visited = 0;
};

StageResult stage_select(const Matrix& X_sub, const Vector& y, const std::vector<int>& pi,
                         const GridSpec& grid = {}, const PathOptions& options = {});

struct EtLassoOptions {
  GridSpec grid;
  PathOptions path;
  // Stage two normally permutes only the surviving columns; this switches the
  // permuted block to a permutation of the full design instead.
  bool stage2_full_design = false;
  enum class Refit { Ols, LassoAtCutoff };
  Refit refit = Refit::Ols;
};

struct SelectionResult {
  IndexSet selected;            // final selection, original column indices
  IndexSet stage1_selected;
  double cutoff_stage1 = 0.0;
  double cutoff_stage2 = 0.0;
  Vector z_original;            // stage-one entry values, all p features
  Vector z_pseudo;              // stage-one entry values of the permuted block
  Vector z_original_stage2;     // stage-two entry values, one per survivor
  Vector z_pseudo_stage2;
  Vector coefficients;          // refit coefficients on the raw scale
  double intercept = 0.0;
  double wall_time_s = 0.0;
  PermutationPlan plan;
};

SelectionResult et_lasso_select(const DesignMatrix& X, const Response& y, std::uint64_t seed,
                                const EtLassoOptions& options = {});

// Ordinary least squares of y on the columns of X listed in `subset`, mapped
// to the raw scale; returns (coefficients, intercept). An empty subset gives
// the intercept-only fit. Throws RankDeficient when the columns are
// linearly dependent.
std::pair<Vector, double> refit_ols(const DesignMatrix& X, const Response& y,
                                    const IndexSet& subset);

// max over features outside `subset` of || X_j' X_S (X_S' X_S)^{-1} ||_1,
// the irrepresentable-condition statistic for the support `subset`.
double mutual_incoherence(const Matrix& X, const IndexSet& subset);
double mutual_incoherence(const DesignMatrix& X, const IndexSet& subset);

}  // namespace etlasso
