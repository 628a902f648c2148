#include <benchmark/benchmark.h>

#include <utility>

#include "etlasso/baselines.hpp"
#include "etlasso/datagen.hpp"
#include "etlasso/etlasso.hpp"
#include "etlasso/lasso_path.hpp"
#include "etlasso/standardize.hpp"

namespace {

etlasso::SimInstance instance(int n, int p, int k) {
  etlasso::SimConfig cfg;
  cfg.n = n;
  cfg.p = p;
  cfg.k = k;
  cfg.cov = etlasso::CovarianceSpec::ar1(0.5);
  cfg.seed = 42;
  return etlasso::sample_instance(cfg);
}

std::pair<etlasso::DesignMatrix, etlasso::Response> standardized(int n, int p, int k) {
  const auto inst = instance(n, p, k);
  return etlasso::standardize(inst.X, inst.y);
}

void BM_SampleInstance(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(instance(500, p, 10));
  }
}
BENCHMARK(BM_SampleInstance)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FitPath(benchmark::State& state) {
  const auto [X, y] = standardized(500, static_cast<int>(state.range(0)), 10);
  const auto grid = etlasso::make_grid(etlasso::lambda_max(X, y), 100, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(etlasso::fit_path(X, y, grid));
  }
}
BENCHMARK(BM_FitPath)->Arg(200)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EtLassoSelect(benchmark::State& state) {
  const auto [X, y] = standardized(500, static_cast<int>(state.range(0)), 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(etlasso::et_lasso_select(X, y, 7));
  }
}
BENCHMARK(BM_EtLassoSelect)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BicSelect(benchmark::State& state) {
  const auto [X, y] = standardized(500, static_cast<int>(state.range(0)), 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(etlasso::bic_select(X, y));
  }
}
BENCHMARK(BM_BicSelect)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CvSelect(benchmark::State& state) {
  const auto [X, y] = standardized(500, static_cast<int>(state.range(0)), 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(etlasso::cv_select(X, y, {}, 5, 7));
  }
}
BENCHMARK(BM_CvSelect)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
