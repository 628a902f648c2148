#include "etlasso/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "etlasso/errors.hpp"

namespace etlasso {

SelectionScore score_selection(const IndexSet& selected, const IndexSet& truth) {
  SelectionScore score;
  score.n_selected = static_cast<int>(selected.size());
  score.n_true = static_cast<int>(truth.size());

  IndexSet hit;
  std::set_intersection(selected.begin(), selected.end(), truth.begin(), truth.end(),
                        std::back_inserter(hit));
  score.n_correct = static_cast<int>(hit.size());

  if (score.n_selected > 0)
    score.precision = static_cast<double>(score.n_correct) / score.n_selected;
  if (score.n_true > 0) score.recall = static_cast<double>(score.n_correct) / score.n_true;
  if (score.precision && score.recall && (*score.precision + *score.recall) > 0.0)
    score.f1 = 2.0 * *score.precision * *score.recall / (*score.precision + *score.recall);
  return score;
}

double mse(const Vector& predicted, const Vector& actual) {
  if (predicted.size() != actual.size())
    throw DimensionMismatch("prediction and target lengths differ");
  if (predicted.size() == 0) throw InvalidInput("cannot take MSE of empty vectors");
  return (predicted - actual).squaredNorm() / static_cast<double>(predicted.size());
}

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

// Sample standard deviation (n-1); a single observation gets sd 0.
MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(n);
  if (n == 1) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(n - 1));
  return out;
}

}  // namespace

AggregateRow aggregate(const std::vector<SelectionScore>& scores,
                       const std::vector<double>& times_s) {
  if (scores.size() != times_s.size())
    throw DimensionMismatch("scores and times must align per replication");

  AggregateRow row;
  row.replications = static_cast<int>(scores.size());
  std::vector<double> precisions, recalls, f1s;
  int with_false_positive = 0;
  for (const auto& s : scores) {
    if (s.precision) precisions.push_back(*s.precision);
    if (s.recall) recalls.push_back(*s.recall);
    if (s.f1) f1s.push_back(*s.f1);
    if (!s.precision || !s.recall || !s.f1) ++row.undefined_count;
    if (s.n_selected - s.n_correct >= 1) ++with_false_positive;
  }
  if (!precisions.empty()) {
    const MeanSd ms = mean_sd(precisions);
    row.precision_mean = ms.mean;
    row.precision_sd = ms.sd;
  }
  if (!recalls.empty()) {
    const MeanSd ms = mean_sd(recalls);
    row.recall_mean = ms.mean;
    row.recall_sd = ms.sd;
  }
  if (!f1s.empty()) {
    const MeanSd ms = mean_sd(f1s);
    row.f1_mean = ms.mean;
    row.f1_sd = ms.sd;
  }
  const MeanSd ts = mean_sd(times_s);
  row.time_mean_s = ts.mean;
  row.time_sd_s = ts.sd;
  if (!scores.empty())
    row.fp_any_rate = static_cast<double>(with_false_positive) / static_cast<double>(scores.size());
  return row;
}

}  // namespace etlasso
