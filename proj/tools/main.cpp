#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "etlasso/baselines.hpp"
#include "etlasso/csv.hpp"
#include "etlasso/datagen.hpp"
#include "etlasso/errors.hpp"
#include "etlasso/etlasso.hpp"
#include "etlasso/report.hpp"
#include "etlasso/rng.hpp"
#include "etlasso/simulate.hpp"
#include "etlasso/standardize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;   // unusable options or run configuration
constexpr int kExitParse = 3;    // malformed or unusable input data
constexpr int kExitNumeric = 4;  // numeric failure while fitting

using etlasso::GridSpec;
using etlasso::IndexSet;
using etlasso::Matrix;
using etlasso::Vector;

struct CommonFitArgs {
  GridSpec grid;
  std::uint64_t seed = 1;
  int folds = 5;
  std::vector<std::string> methods = {"etlasso"};
  std::string refit = "ols";
  bool stage2_full_design = false;
};

void add_grid_options(CLI::App& cmd, GridSpec& grid) {
  cmd.add_option("--grid-size", grid.count, "Number of penalty grid points")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000));
  cmd.add_option("--grid-ratio", grid.ratio, "Smallest penalty as a fraction of the largest")
      ->capture_default_str()
      ->check(CLI::Range(1e-12, 0.999999));
}

etlasso::CovarianceSpec make_cov(const std::string& kind, std::optional<double> rho) {
  using Cov = etlasso::CovarianceSpec;
  if (kind == "independent") return Cov::independent();
  if (kind == "ar1") return Cov::ar1(rho.value_or(0.5));
  if (kind == "cs") return Cov::compound_symmetric(rho.value_or(0.25));
  throw etlasso::ConfigError("unknown covariance kind '" + kind + "'");
}

etlasso::EtLassoOptions::Refit parse_refit(const std::string& name) {
  if (name == "ols") return etlasso::EtLassoOptions::Refit::Ols;
  if (name == "lasso") return etlasso::EtLassoOptions::Refit::LassoAtCutoff;
  throw etlasso::ConfigError("unknown refit mode '" + name + "'");
}

void write_or_print(const std::optional<std::string>& out_path, const std::string& payload,
                    const std::string& extra_stdout) {
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw etlasso::ConfigError("cannot write '" + *out_path + "'");
    out << payload;
    if (!extra_stdout.empty()) std::cout << extra_stdout;
  } else {
    std::cout << payload;
  }
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  etlasso::SimConfig base;
  std::string cov_kind = "independent";
  std::optional<double> rho;
  std::string placement = "first";
  int replications = 100;
  CommonFitArgs fit;
  int jobs = 1;
  bool omit_timing = false;
  std::optional<std::string> out_path;
};

int cmd_simulate(const SimulateArgs& args) {
  etlasso::BenchmarkSpec spec;
  spec.base = args.base;
  spec.base.cov = make_cov(args.cov_kind, args.rho);
  spec.base.placement = args.placement == "random" ? etlasso::SimConfig::Placement::Random
                                                   : etlasso::SimConfig::Placement::First;
  spec.replications = args.replications;
  spec.methods.clear();
  for (const auto& name : args.fit.methods) spec.methods.push_back(etlasso::parse_method(name));
  spec.grid = args.fit.grid;
  spec.folds = args.fit.folds;
  spec.seed = args.fit.seed;
  spec.jobs = args.jobs;
  spec.measure_time = !args.omit_timing;
  spec.refit = parse_refit(args.fit.refit);
  spec.stage2_full_design = args.fit.stage2_full_design;

  const etlasso::BenchmarkReport report = etlasso::run_benchmark(spec);
  write_or_print(args.out_path, etlasso::benchmark_report_json(report),
                 etlasso::benchmark_report_table(report));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// select

struct SelectArgs {
  std::string data_path;
  std::string response;
  std::vector<std::string> features;
  char delimiter = ',';
  bool no_header = false;
  double split = 1.0;
  std::uint64_t split_seed = 1;
  CommonFitArgs fit;
  std::optional<std::string> out_path;
};

struct Dataset {
  Matrix X;
  Vector y;
  std::vector<std::string> feature_names;
};

Dataset extract_dataset(const etlasso::CsvTable& table, const std::string& response,
                        const std::vector<std::string>& requested) {
  auto column_index = [&](const std::string& name) {
    for (std::size_t j = 0; j < table.columns.size(); ++j)
      if (table.columns[j] == name) return static_cast<int>(j);
    throw etlasso::ConfigError("no column named '" + name + "'");
  };
  const int y_col = column_index(response);

  Dataset data;
  std::vector<int> x_cols;
  if (requested.empty()) {
    for (std::size_t j = 0; j < table.columns.size(); ++j)
      if (static_cast<int>(j) != y_col) x_cols.push_back(static_cast<int>(j));
  } else {
    for (const auto& name : requested) {
      const int j = column_index(name);
      if (j == y_col)
        throw etlasso::ConfigError("'" + name + "' is the response and cannot be a feature");
      x_cols.push_back(j);
    }
  }
  if (x_cols.empty()) throw etlasso::ConfigError("no feature columns left");

  data.X.resize(table.values.rows(), static_cast<Eigen::Index>(x_cols.size()));
  for (std::size_t i = 0; i < x_cols.size(); ++i) {
    data.X.col(static_cast<Eigen::Index>(i)) = table.values.col(x_cols[i]);
    data.feature_names.push_back(table.columns[static_cast<std::size_t>(x_cols[i])]);
  }
  data.y = table.values.col(y_col);
  return data;
}

Vector predict(const Matrix& X_raw, const IndexSet& selected, const Vector& coefs,
               double intercept) {
  Vector out = Vector::Constant(X_raw.rows(), intercept);
  for (std::size_t i = 0; i < selected.size(); ++i)
    out += coefs[static_cast<Eigen::Index>(i)] * X_raw.col(selected[i]);
  return out;
}

int cmd_select(const SelectArgs& args) {
  const etlasso::CsvTable table = etlasso::read_csv(args.data_path, args.delimiter, !args.no_header);
  const Dataset data = extract_dataset(table, args.response, args.features);
  const Eigen::Index n = data.X.rows();

  if (!(args.split > 0.0) || args.split > 1.0)
    throw etlasso::ConfigError("--split must be in (0, 1]");
  std::vector<int> train_rows, test_rows;
  if (args.split >= 1.0) {
    for (Eigen::Index i = 0; i < n; ++i) train_rows.push_back(static_cast<int>(i));
  } else {
    const auto order = etlasso::Rng(args.split_seed).permutation(static_cast<int>(n));
    const auto n_train =
        std::clamp<long long>(std::llround(args.split * static_cast<double>(n)), 1, n - 1);
    train_rows.assign(order.begin(), order.begin() + n_train);
    test_rows.assign(order.begin() + n_train, order.end());
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());
  }

  auto take_rows = [&](const std::vector<int>& rows, const Matrix& X, const Vector& y) {
    Matrix Xs(static_cast<Eigen::Index>(rows.size()), X.cols());
    Vector ys(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Xs.row(static_cast<Eigen::Index>(i)) = X.row(rows[i]);
      ys[static_cast<Eigen::Index>(i)] = y[rows[i]];
    }
    return std::make_pair(Xs, ys);
  };
  const auto [X_train_raw, y_train_raw] = take_rows(train_rows, data.X, data.y);
  const auto [X_test_raw, y_test_raw] = take_rows(test_rows, data.X, data.y);

  etlasso::DesignMatrix X;
  etlasso::Response y;
  try {
    std::tie(X, y) = etlasso::standardize(X_train_raw, y_train_raw);
  } catch (const etlasso::ZeroVarianceColumn& e) {
    std::cerr << "error: feature column '" << data.feature_names[static_cast<std::size_t>(e.column)]
              << "' is constant in the training rows\n";
    return kExitParse;
  }

  etlasso::SelectionReport report;
  report.data_path = args.data_path;
  report.response = args.response;
  report.n_rows = static_cast<int>(n);
  report.n_train = static_cast<int>(train_rows.size());
  report.n_test = static_cast<int>(test_rows.size());
  report.feature_names = data.feature_names;
  report.split = args.split;
  report.split_seed = args.split_seed;
  report.seed = args.fit.seed;
  report.grid = args.fit.grid;
  report.folds = args.fit.folds;

  for (const auto& name : args.fit.methods) {
    const etlasso::Method method = etlasso::parse_method(name);
    etlasso::MethodSelection entry;
    entry.method = name;

    const auto t0 = std::chrono::steady_clock::now();
    switch (method) {
      case etlasso::Method::EtLasso: {
        etlasso::EtLassoOptions opt;
        opt.grid = args.fit.grid;
        opt.refit = parse_refit(args.fit.refit);
        opt.stage2_full_design = args.fit.stage2_full_design;
        const auto result = etlasso::et_lasso_select(X, y, args.fit.seed, opt);
        entry.selected = result.selected;
        entry.coefficients.assign(result.coefficients.data(),
                                  result.coefficients.data() + result.coefficients.size());
        entry.intercept = result.intercept;
        entry.cutoff_stage1 = result.cutoff_stage1;
        if (!result.stage1_selected.empty()) entry.cutoff_stage2 = result.cutoff_stage2;
        break;
      }
      case etlasso::Method::Bic:
      case etlasso::Method::Cv: {
        const etlasso::CriterionTrace trace =
            method == etlasso::Method::Bic
                ? etlasso::bic_select(X, y, args.fit.grid)
                : etlasso::cv_select(X, y, args.fit.grid, args.fit.folds,
                                     etlasso::derive_seed(args.fit.seed, 2));
        entry.selected = trace.selected;
        Vector beta_std(static_cast<Eigen::Index>(trace.selected.size()));
        for (std::size_t i = 0; i < trace.selected.size(); ++i)
          beta_std[static_cast<Eigen::Index>(i)] = trace.chosen_coefs[trace.selected[i]];
        const auto mapped = etlasso::to_original_scale(X, y, trace.selected, beta_std);
        entry.coefficients.assign(mapped.first.data(), mapped.first.data() + mapped.first.size());
        entry.intercept = mapped.second;
        if (trace.chosen_index >= 0) entry.chosen_lambda = trace.chosen_lambda;
        break;
      }
    }
    entry.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (int j : entry.selected)
      entry.selected_names.push_back(data.feature_names[static_cast<std::size_t>(j)]);

    const Vector coefs = Eigen::Map<const Vector>(entry.coefficients.data(),
                                                  static_cast<Eigen::Index>(entry.coefficients.size()));
    entry.train_mse =
        etlasso::mse(predict(X_train_raw, entry.selected, coefs, entry.intercept), y_train_raw);
    if (!test_rows.empty())
      entry.test_mse =
          etlasso::mse(predict(X_test_raw, entry.selected, coefs, entry.intercept), y_test_raw);

    report.methods.push_back(std::move(entry));
  }

  write_or_print(args.out_path, etlasso::selection_report_json(report),
                 etlasso::selection_report_text(report));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// path

struct PathArgs {
  std::string data_path;
  std::string response;
  std::vector<std::string> features;
  char delimiter = ',';
  bool no_header = false;
  GridSpec grid;
  std::string out_path;
};

int cmd_path(const PathArgs& args) {
  const etlasso::CsvTable table = etlasso::read_csv(args.data_path, args.delimiter, !args.no_header);
  const Dataset data = extract_dataset(table, args.response, args.features);

  etlasso::DesignMatrix X;
  etlasso::Response y;
  try {
    std::tie(X, y) = etlasso::standardize(data.X, data.y);
  } catch (const etlasso::ZeroVarianceColumn& e) {
    std::cerr << "error: feature column '" << data.feature_names[static_cast<std::size_t>(e.column)]
              << "' is constant\n";
    return kExitParse;
  }

  const double lmax = etlasso::lambda_max(X, y);
  if (!(lmax > 0.0))
    throw etlasso::InvalidGridSpec("response is orthogonal to every feature; path is all zero");
  const etlasso::LambdaGrid grid = etlasso::make_grid(lmax, args.grid.count, args.grid.ratio);
  const etlasso::LassoPath path = etlasso::fit_path(X, y, grid);

  etlasso::write_path_csv(args.out_path, grid.values, path.coefs, path.entry_values);
  std::cout << "wrote " << grid.count() << " grid points x " << X.cols() << " features to "
            << args.out_path << "\n";
  return kExitOk;
}

void add_common_fit_options(CLI::App& cmd, CommonFitArgs& fit, bool with_methods) {
  add_grid_options(cmd, fit.grid);
  cmd.add_option("--seed", fit.seed, "Seed for every random draw")->capture_default_str();
  cmd.add_option("--folds", fit.folds, "Cross-validation folds")
      ->capture_default_str()
      ->check(CLI::Range(2, 1000000));
  if (with_methods)
    cmd.add_option("--methods", fit.methods, "Comma-separated methods: etlasso, bic, cv")
        ->delimiter(',')
        ->capture_default_str();
  cmd.add_option("--refit", fit.refit, "Coefficients reported for etlasso: ols or lasso")
      ->check(CLI::IsMember({"ols", "lasso"}))
      ->capture_default_str();
  cmd.add_flag("--stage2-full-design", fit.stage2_full_design,
               "Race stage-two survivors against a permutation of the full design");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feature selection for sparse linear regression: picks the Lasso penalty by "
               "racing features against row-permuted copies of themselves"};
  app.set_config("--config", "", "Read options from an INI/TOML file");
  app.require_subcommand(1);

  SimulateArgs sim;
  sim.base.n = 500;
  sim.base.p = 1000;
  sim.base.k = 10;
  sim.fit.methods = {"etlasso", "bic", "cv"};
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo benchmark on synthetic data");
  simulate->add_option("--n", sim.base.n, "Observations per instance")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000000));
  simulate->add_option("--p", sim.base.p, "Features per instance")->capture_default_str();
  simulate->add_option("--k", sim.base.k, "True support size")->capture_default_str();
  simulate->add_option("--cov", sim.cov_kind, "Covariance family: independent, ar1, cs")
      ->check(CLI::IsMember({"independent", "ar1", "cs"}))
      ->capture_default_str();
  simulate->add_option("--rho", sim.rho, "Correlation (default 0.5 for ar1, 0.25 for cs)");
  simulate->add_option("--beta-magnitude", sim.base.beta_magnitude, "Coefficient magnitude")
      ->capture_default_str();
  simulate->add_option("--noise-sd", sim.base.noise_sd, "Noise standard deviation")
      ->capture_default_str();
  simulate->add_option("--support-placement", sim.placement, "Support placement: first or random")
      ->check(CLI::IsMember({"first", "random"}))
      ->capture_default_str();
  simulate->add_option("--reps", sim.replications, "Replications")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000000));
  simulate->add_option("--jobs", sim.jobs, "Concurrent replications")
      ->envname("ETLASSO_JOBS")
      ->capture_default_str()
      ->check(CLI::Range(1, 4096));
  simulate->add_flag("--omit-timing", sim.omit_timing,
                     "Record all wall times as 0 so reports are byte-reproducible");
  simulate->add_option("--out", sim.out_path, "Write the JSON report here");
  add_common_fit_options(*simulate, sim.fit, true);

  SelectArgs sel;
  CLI::App* select = app.add_subcommand("select", "Select features in a CSV dataset");
  select->add_option("--data", sel.data_path, "CSV file")->required();
  select->add_option("--response", sel.response, "Response column name")->required();
  select->add_option("--features", sel.features,
                     "Feature columns (default: every non-response column)")
      ->delimiter(',');
  select->add_option("--delimiter", sel.delimiter, "Field delimiter")->capture_default_str();
  select->add_flag("--no-header", sel.no_header, "Data has no header row; columns are x1..xp");
  select->add_option("--split", sel.split, "Training fraction; 1.0 keeps every row for training")
      ->capture_default_str();
  select->add_option("--split-seed", sel.split_seed, "Seed for the train/test shuffle")
      ->capture_default_str();
  select->add_option("--out", sel.out_path, "Write the JSON report here");
  add_common_fit_options(*select, sel.fit, true);

  PathArgs path;
  CLI::App* path_cmd = app.add_subcommand("path", "Export the full coefficient path as CSV");
  path_cmd->add_option("--data", path.data_path, "CSV file")->required();
  path_cmd->add_option("--response", path.response, "Response column name")->required();
  path_cmd->add_option("--features", path.features,
                       "Feature columns (default: every non-response column)")
      ->delimiter(',');
  path_cmd->add_option("--delimiter", path.delimiter, "Field delimiter")->capture_default_str();
  path_cmd->add_flag("--no-header", path.no_header, "Data has no header row; columns are x1..xp");
  add_grid_options(*path_cmd, path.grid);
  path_cmd->add_option("--out", path.out_path, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (select->parsed()) return cmd_select(sel);
    if (path_cmd->parsed()) return cmd_path(path);
    return kExitConfig;
  } catch (const etlasso::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const etlasso::InvalidGridSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const etlasso::InvalidFoldCount& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const etlasso::InvalidRho& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const etlasso::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const etlasso::EmptyDesign& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const etlasso::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const etlasso::ZeroVarianceColumn& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const etlasso::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const etlasso::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
