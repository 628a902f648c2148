#include "etlasso/simulate.hpp"

#include <chrono>

#include "etlasso/errors.hpp"
#include "etlasso/parallel.hpp"
#include "etlasso/rng.hpp"
#include "etlasso/standardize.hpp"

namespace etlasso {

namespace {

// Stream tags for per-replication sub-procedures.
constexpr std::uint64_t kSelectionStream = 1;
constexpr std::uint64_t kFoldStream = 2;

struct RepOutcome {
  std::vector<SelectionScore> scores;  // per method
  std::vector<double> times;
};

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::EtLasso: return "etlasso";
    case Method::Bic: return "bic";
    case Method::Cv: return "cv";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "etlasso") return Method::EtLasso;
  if (name == "bic") return Method::Bic;
  if (name == "cv") return Method::Cv;
  throw ConfigError("unknown method '" + name + "' (expected etlasso, bic, or cv)");
}

BenchmarkReport run_benchmark(const BenchmarkSpec& spec) {
  if (spec.replications < 1) throw ConfigError("need at least one replication");
  if (spec.methods.empty()) throw ConfigError("no methods requested");

  const int n_methods = static_cast<int>(spec.methods.size());
  std::vector<RepOutcome> outcomes(static_cast<std::size_t>(spec.replications));

  parallel_for(spec.jobs, spec.replications, [&](int rep) {
    SimConfig cfg = spec.base;
    cfg.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(rep));
    const SimInstance inst = sample_instance(cfg);
    auto [X, y] = standardize(inst.X, inst.y);

    RepOutcome& out = outcomes[static_cast<std::size_t>(rep)];
    out.scores.resize(static_cast<std::size_t>(n_methods));
    out.times.resize(static_cast<std::size_t>(n_methods));

    for (int m = 0; m < n_methods; ++m) {
      const auto t0 = std::chrono::steady_clock::now();
      IndexSet selected;
      switch (spec.methods[static_cast<std::size_t>(m)]) {
        case Method::EtLasso: {
          EtLassoOptions opt;
          opt.grid = spec.grid;
          opt.path = spec.path;
          opt.refit = spec.refit;
          opt.stage2_full_design = spec.stage2_full_design;
          selected =
              et_lasso_select(X, y, derive_seed(cfg.seed, kSelectionStream), opt).selected;
          break;
        }
        case Method::Bic:
          selected = bic_select(X, y, spec.grid, spec.path).selected;
          break;
        case Method::Cv:
          selected = cv_select(X, y, spec.grid, spec.folds, derive_seed(cfg.seed, kFoldStream),
                               spec.path)
                         .selected;
          break;
      }
      const auto t1 = std::chrono::steady_clock::now();
      out.scores[static_cast<std::size_t>(m)] = score_selection(selected, inst.true_support);
      out.times[static_cast<std::size_t>(m)] =
          spec.measure_time ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
    }
  });

  BenchmarkReport report;
  report.replications = spec.replications;
  report.spec = spec;
  for (int m = 0; m < n_methods; ++m) {
    std::vector<SelectionScore> scores;
    std::vector<double> times;
    scores.reserve(outcomes.size());
    times.reserve(outcomes.size());
    for (const auto& out : outcomes) {
      scores.push_back(out.scores[static_cast<std::size_t>(m)]);
      times.push_back(out.times[static_cast<std::size_t>(m)]);
    }
    AggregateRow row = aggregate(scores, times);
    row.method = method_name(spec.methods[static_cast<std::size_t>(m)]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace etlasso
