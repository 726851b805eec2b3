#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slope/data.hpp"
#include "slope/solvers.hpp"

namespace slope {

/// A solver entry of a benchmark plan: the label used in trace files plus the
/// full configuration.
struct SolverEntry {
  std::string name;
  SolverConfig config;
};

struct BenchmarkPlan {
  // Problem source: exactly one of scenario / libsvm_path.
  std::optional<ScenarioSpec> scenario;
  std::string libsvm_path;

  std::vector<double> reg_fractions = {0.5, 0.1, 0.02};  // lambda_max multipliers
  double q = 0.1;                                        // BH parameter
  std::vector<SolverEntry> solvers;
  double ref_tol = 1e-12;    // reference-solution duality gap
  double time_budget = std::numeric_limits<double>::infinity();  // per run
  std::uint64_t seed = 0;
  std::string out_dir = "bench_out";
  bool serial = false;
};

struct CellOutcome {
  double fraction = 0.0;
  std::string csv_path;
  bool ok = false;
  std::string diagnostic;
  double ref_primal = 0.0;
  bool ref_certificate = false;
};

struct BenchmarkResult {
  std::vector<CellOutcome> cells;
  std::string manifest_path;
};

/// For each regularization fraction: preprocess, scale the BH sequence by
/// fraction * lambda_max, compute a high-precision reference optimum, run
/// every solver and write one CSV per cell plus a JSON manifest. Cells run in
/// parallel unless plan.serial is set; SLOPE_BENCH_THREADS caps the workers.
BenchmarkResult run_benchmark(const BenchmarkPlan& plan);

/// One hybrid run per v on the plan's first fraction; trace files named
/// sweep_v<v>.csv.
BenchmarkResult sweep_v(const BenchmarkPlan& plan,
                        const std::vector<int>& v_values);

/// Simulated scenarios of the benchmark protocol, by number:
///   1: n=200,   p=20000,  k=20, dense
///   2: n=20000, p=200,    k=40, dense
///   3: n=200,   p=200000, k=20, density 0.001
ScenarioSpec table_scenario(int which);

/// One parsed row of a trace CSV (schema: solver,epoch,time_s,primal,subopt,gap).
struct TraceRow {
  std::string solver;
  long epoch = 0;
  double time_s = 0.0;
  double primal = 0.0;
  double subopt = 0.0;
  double gap = 0.0;
};

std::vector<TraceRow> read_trace_csv(const std::string& path);

}  // namespace slope
