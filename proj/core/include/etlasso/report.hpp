#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etlasso/simulate.hpp"

namespace etlasso {

inline constexpr int kReportSchemaVersion = 1;

// JSON for a Monte Carlo study: schema_version, config echo, replication
// count, and one row per method. Undefined metrics serialize as null. Key
// order is alphabetical, so identical inputs give identical bytes.
std::string benchmark_report_json(const BenchmarkReport& report, int indent = 2);

// Fixed-width text table of the same rows; "#" marks undefined cells.
std::string benchmark_report_table(const BenchmarkReport& report);

// Result of running one method on a dataset (the `select` command).
struct MethodSelection {
  std::string method;
  IndexSet selected;
  std::vector<std::string> selected_names;
  std::vector<double> coefficients;  // raw scale, aligned with `selected`
  double intercept = 0.0;
  std::optional<double> cutoff_stage1;
  std::optional<double> cutoff_stage2;
  std::optional<double> chosen_lambda;
  std::optional<double> train_mse;
  std::optional<double> test_mse;
  double wall_time_s = 0.0;
};

struct SelectionReport {
  std::string data_path;
  std::string response;
  int n_rows = 0;
  int n_train = 0;
  int n_test = 0;
  std::vector<std::string> feature_names;
  double split = 1.0;
  std::uint64_t split_seed = 0;
  std::uint64_t seed = 0;
  GridSpec grid;
  int folds = 5;
  std::vector<MethodSelection> methods;
};

std::string selection_report_json(const SelectionReport& report, int indent = 2);
std::string selection_report_text(const SelectionReport& report);

}  // namespace etlasso
