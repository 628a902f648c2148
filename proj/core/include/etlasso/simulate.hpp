#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etlasso/baselines.hpp"
#include "etlasso/datagen.hpp"
#include "etlasso/etlasso.hpp"
#include "etlasso/metrics.hpp"

namespace etlasso {

enum class Method { EtLasso, Bic, Cv };

const char* method_name(Method m);
Method parse_method(const std::string& name);  // throws ConfigError

// One Monte Carlo study: `replications` independent instances of `base`
// (each with a seed derived from `seed` and the replication index), every
// requested method run on each instance, metrics aggregated per method.
struct BenchmarkSpec {
  SimConfig base;
  int replications = 100;
  std::vector<Method> methods = {Method::EtLasso, Method::Bic, Method::Cv};
  GridSpec grid;
  PathOptions path;
  int folds = 5;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool measure_time = true;  // when false, reported times are exactly 0
  EtLassoOptions::Refit refit = EtLassoOptions::Refit::Ols;
  bool stage2_full_design = false;
};

struct BenchmarkReport {
  std::vector<AggregateRow> rows;   // one per method, in spec order
  int replications = 0;
  BenchmarkSpec spec;               // config echo
};

BenchmarkReport run_benchmark(const BenchmarkSpec& spec);

}  // namespace etlasso
