#include "etlasso/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace etlasso {

namespace {

using nlohmann::json;

json opt_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

const char* cov_name(CovarianceSpec::Kind kind) {
  switch (kind) {
    case CovarianceSpec::Kind::Independent: return "independent";
    case CovarianceSpec::Kind::Ar1: return "ar1";
    case CovarianceSpec::Kind::CompoundSymmetric: return "cs";
  }
  return "?";
}

json config_json(const BenchmarkSpec& spec) {
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(method_name(m));
  return json{
      {"n", spec.base.n},
      {"p", spec.base.p},
      {"k", spec.base.k},
      {"covariance", {{"kind", cov_name(spec.base.cov.kind)}, {"rho", spec.base.cov.rho}}},
      {"beta_magnitude", spec.base.beta_magnitude},
      {"noise_sd", spec.base.noise_sd},
      {"support_placement",
       spec.base.placement == SimConfig::Placement::First ? "first" : "random"},
      {"seed", spec.seed},
      {"replications", spec.replications},
      {"methods", methods},
      {"grid", {{"count", spec.grid.count}, {"ratio", spec.grid.ratio}}},
      {"folds", spec.folds},
      {"jobs", spec.jobs},
      {"timing", spec.measure_time},
      {"refit", spec.refit == EtLassoOptions::Refit::Ols ? "ols" : "lasso"},
      {"stage2_full_design", spec.stage2_full_design},
  };
}

json row_json(const AggregateRow& row) {
  return json{
      {"method", row.method},
      {"precision_mean", opt_json(row.precision_mean)},
      {"precision_sd", opt_json(row.precision_sd)},
      {"recall_mean", opt_json(row.recall_mean)},
      {"recall_sd", opt_json(row.recall_sd)},
      {"f1_mean", opt_json(row.f1_mean)},
      {"f1_sd", opt_json(row.f1_sd)},
      {"time_mean_s", row.time_mean_s},
      {"time_sd_s", row.time_sd_s},
      {"fp_any_rate", row.fp_any_rate},
      {"undefined_count", row.undefined_count},
  };
}

std::string cell(const std::optional<double>& mean, const std::optional<double>& sd) {
  if (!mean) return "#";
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << *mean;
  if (sd) out << " (" << std::fixed << std::setprecision(3) << *sd << ")";
  return out.str();
}

}  // namespace

std::string benchmark_report_json(const BenchmarkReport& report, int indent) {
  json rows = json::array();
  for (const auto& row : report.rows) rows.push_back(row_json(row));
  const json doc{
      {"schema_version", kReportSchemaVersion},
      {"config", config_json(report.spec)},
      {"replications", report.replications},
      {"rows", rows},
  };
  return doc.dump(indent) + "\n";
}

std::string benchmark_report_table(const BenchmarkReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "Method" << std::setw(16) << "Precision" << std::setw(16)
      << "Recall" << std::setw(16) << "F1" << std::setw(18) << "Time (s)" << "Undef\n";
  for (const auto& row : report.rows) {
    std::ostringstream time_cell;
    time_cell << std::fixed << std::setprecision(3) << row.time_mean_s << " ("
              << std::setprecision(3) << row.time_sd_s << ")";
    out << std::left << std::setw(10) << row.method << std::setw(16)
        << cell(row.precision_mean, row.precision_sd) << std::setw(16)
        << cell(row.recall_mean, row.recall_sd) << std::setw(16) << cell(row.f1_mean, row.f1_sd)
        << std::setw(18) << time_cell.str() << row.undefined_count << "\n";
  }
  return out.str();
}

std::string selection_report_json(const SelectionReport& report, int indent) {
  json methods = json::array();
  for (const auto& m : report.methods) {
    json entry{
        {"method", m.method},
        {"selected_indices", m.selected},
        {"selected_names", m.selected_names},
        {"coefficients", m.coefficients},
        {"intercept", m.intercept},
        {"train_mse", opt_json(m.train_mse)},
        {"wall_time_s", m.wall_time_s},
    };
    if (m.cutoff_stage1) entry["cutoff_stage1"] = *m.cutoff_stage1;
    if (m.cutoff_stage2) entry["cutoff_stage2"] = *m.cutoff_stage2;
    if (m.chosen_lambda) entry["chosen_lambda"] = *m.chosen_lambda;
    if (m.test_mse) entry["test_mse"] = *m.test_mse;
    methods.push_back(std::move(entry));
  }
  const json doc{
      {"schema_version", kReportSchemaVersion},
      {"data", report.data_path},
      {"response", report.response},
      {"n_rows", report.n_rows},
      {"n_train", report.n_train},
      {"n_test", report.n_test},
      {"features", report.feature_names},
      {"split", report.split},
      {"split_seed", report.split_seed},
      {"seed", report.seed},
      {"grid", {{"count", report.grid.count}, {"ratio", report.grid.ratio}}},
      {"folds", report.folds},
      {"methods", methods},
  };
  return doc.dump(indent) + "\n";
}

std::string selection_report_text(const SelectionReport& report) {
  std::ostringstream out;
  for (const auto& m : report.methods) {
    out << m.method << ": selected " << m.selected.size() << " feature(s)";
    if (!m.selected_names.empty()) {
      out << " [";
      for (std::size_t i = 0; i < m.selected_names.size(); ++i)
        out << (i ? ", " : "") << m.selected_names[i];
      out << "]";
    }
    out << "\n";
    if (m.cutoff_stage1)
      out << "  cutoffs: " << *m.cutoff_stage1 << " (stage 1), "
          << (m.cutoff_stage2 ? std::to_string(*m.cutoff_stage2) : std::string("-"))
          << " (stage 2)\n";
    if (m.chosen_lambda) out << "  chosen lambda: " << *m.chosen_lambda << "\n";
    if (m.train_mse) out << "  train mse: " << *m.train_mse << "\n";
    if (m.test_mse) out << "  test mse: " << *m.test_mse << "\n";
    out << "  wall time: " << m.wall_time_s << " s\n";
  }
  return out.str();
}

}  // namespace etlasso
