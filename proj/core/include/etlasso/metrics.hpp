#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etlasso/types.hpp"

namespace etlasso {

// Selection quality of one run. A metric is absent when its denominator is
// empty: precision needs a nonempty selection, recall a nonempty truth, and
// F1 both components defined and not both zero.
struct SelectionScore {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  int n_selected = 0;
  int n_true = 0;
  int n_correct = 0;
};

SelectionScore score_selection(const IndexSet& selected, const IndexSet& truth);

// Mean squared error; requires equal, nonzero lengths.
double mse(const Vector& predicted, const Vector& actual);

// Aggregates over replications. Means and sample standard deviations are
// taken over the replications where the metric is defined; `undefined_count`
// is the number of replications where at least one metric was undefined.
struct AggregateRow {
  std::string method;
  std::optional<double> precision_mean, precision_sd;
  std::optional<double> recall_mean, recall_sd;
  std::optional<double> f1_mean, f1_sd;
  double time_mean_s = 0.0;
  double time_sd_s = 0.0;
  double fp_any_rate = 0.0;   // share of replications selecting >= 1 non-true feature
  int undefined_count = 0;
  int replications = 0;
};

AggregateRow aggregate(const std::vector<SelectionScore>& scores,
                       const std::vector<double>& times_s);

}  // namespace etlasso
