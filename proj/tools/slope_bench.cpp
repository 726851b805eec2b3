// Benchmark CLI: builds a problem (simulated scenario or libsvm file), races
// the configured solvers over a grid of regularization strengths against a
// high-precision reference solution, and writes one trace CSV per cell plus
// a JSON manifest. See README.md for the CSV schema.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slope/bench.hpp"

namespace {

using slope::BenchmarkPlan;
using slope::ScenarioSpec;
using slope::SolverConfig;
using slope::SolverEntry;
using slope::SolverKind;

SolverKind parse_kind(const std::string& name) {
  if (name == "hybrid") return SolverKind::Hybrid;
  if (name == "pgd") return SolverKind::Pgd;
  if (name == "fista") return SolverKind::Fista;
  if (name == "anderson_pgd" || name == "anderson") return SolverKind::AndersonPgd;
  if (name == "admm") return SolverKind::Admm;
  if (name == "oracle_cd") return SolverKind::OracleCd;
  throw CLI::ValidationError("--solver", "unknown solver '" + name + "'");
}

/// "name[:key=val,...]" with keys v, rho, memory, tol.
SolverEntry parse_solver_spec(const std::string& spec) {
  SolverEntry entry;
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  entry.name = name;
  entry.config.solver = parse_kind(name);
  if (colon == std::string::npos) return entry;

  std::string rest = spec.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma - pos);
    pos = comma == std::string::npos ? rest.size() : comma + 1;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--solver", "expected key=value in '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "v") {
        entry.config.pgd_frequency = std::stoi(value);
      } else if (key == "rho") {
        entry.config.rho = std::stod(value);
      } else if (key == "memory") {
        entry.config.anderson_memory = std::stoi(value);
      } else if (key == "tol") {
        entry.config.tol = std::stod(value);
      } else {
        throw CLI::ValidationError("--solver", "unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("--solver", "bad value in '" + item + "'");
    }
  }
  return entry;
}

std::vector<int> parse_v_range(const std::string& text) {
  std::vector<int> values;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    for (int v = lo; v <= hi; ++v) values.push_back(v);
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto comma = text.find(',', pos);
      values.push_back(std::stoi(text.substr(pos, comma - pos)));
      pos = comma == std::string::npos ? text.size() : comma + 1;
    }
  }
  if (values.empty() || values.front() < 1) {
    throw CLI::ValidationError("--sweep-v", "need v >= 1");
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLOPE solver benchmark harness"};

  std::string scenario = "custom";
  std::string libsvm_path;
  long n = 0, p = 0, k = 0;
  double density = 1.0;
  std::vector<double> fractions;
  double q = 0.1;
  std::vector<std::string> solver_specs;
  double ref_tol = 1e-12;
  double max_time = std::numeric_limits<double>::infinity();
  long max_epochs = 100000;
  std::uint64_t seed = 0;
  std::string out_dir = "bench_out";
  bool serial = false;
  std::string sweep;

  app.add_option("--scenario", scenario,
                 "simulated scenario: 1, 2, 3 or custom (with --n/--p/--k/--density)");
  app.add_option("--libsvm", libsvm_path, "path to a libsvm-format dataset");
  app.add_option("--n", n, "custom scenario: samples");
  app.add_option("--p", p, "custom scenario: features");
  app.add_option("--k", k, "custom scenario: true nonzeros");
  app.add_option("--density", density, "custom scenario: design density in (0,1]");
  app.add_option("--frac", fractions,
                 "lambda_max multiplier (repeatable; default 1/2 1/10 1/50)");
  app.add_option("--q", q, "Benjamini-Hochberg parameter");
  app.add_option("--solver", solver_specs,
                 "solver spec NAME[:key=val,...], keys v,rho,memory,tol (repeatable; "
                 "default: hybrid,pgd,fista,anderson_pgd,admm,oracle_cd)");
  app.add_option("--tol", ref_tol, "reference-solution duality gap");
  app.add_option("--max-time", max_time, "per-run time budget in seconds");
  app.add_option("--max-epochs", max_epochs, "per-run epoch budget");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--serial", serial, "run cells one at a time");
  app.add_option("--sweep-v", sweep, "sweep the hybrid PGD frequency, e.g. 1..9");

  CLI11_PARSE(app, argc, argv);

  try {
    BenchmarkPlan plan;
    if (!libsvm_path.empty()) {
      plan.libsvm_path = libsvm_path;
    } else {
      ScenarioSpec spec;
      if (scenario == "custom") {
        if (n <= 0 || p <= 0) {
          std::fprintf(stderr, "custom scenario needs --n and --p\n");
          return 1;
        }
        spec.n = n;
        spec.p = p;
        spec.k = k;
        spec.density = density;
      } else {
        spec = slope::table_scenario(std::stoi(scenario));
      }
      spec.seed = seed;
      plan.scenario = spec;
    }
    if (!fractions.empty()) plan.reg_fractions = fractions;
    plan.q = q;
    plan.ref_tol = ref_tol;
    plan.time_budget = max_time;
    plan.seed = seed;
    plan.out_dir = out_dir;
    plan.serial = serial;

    if (solver_specs.empty()) {
      solver_specs = {"hybrid", "pgd", "fista", "anderson_pgd", "admm", "oracle_cd"};
    }
    for (const auto& text : solver_specs) {
      SolverEntry entry = parse_solver_spec(text);
      entry.config.max_epochs = max_epochs;
      entry.config.seed = seed;
      plan.solvers.push_back(std::move(entry));
    }

    const slope::BenchmarkResult result =
        sweep.empty() ? slope::run_benchmark(plan)
                      : slope::sweep_v(plan, parse_v_range(sweep));

    bool all_ok = true;
    for (const auto& cell : result.cells) {
      if (cell.ok) {
        std::printf("frac %-8g ref %.12g  -> %s\n", cell.fraction,
                    cell.ref_primal, cell.csv_path.c_str());
      } else {
        all_ok = false;
        std::printf("frac %-8g ABORTED: %s\n", cell.fraction,
                    cell.diagnostic.c_str());
      }
    }
    if (!result.manifest_path.empty()) {
      std::printf("manifest: %s\n", result.manifest_path.c_str());
    }
    return all_ok ? 0 : 1;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
