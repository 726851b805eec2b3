#include "slope/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "slope/clusters.hpp"
#include "slope/sorted_l1.hpp"

namespace slope {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double x, const char* spec = "%.17g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

struct PreparedProblem {
  DesignMatrix X;
  Vector y;
  LambdaSequence lambda_base;
  double lambda_max = 0.0;
  std::string tag;
  json description;
};

void check_problem_source(const BenchmarkPlan& plan) {
  const bool has_scenario = plan.scenario.has_value();
  const bool has_file = !plan.libsvm_path.empty();
  if (has_scenario == has_file) {
    throw ContractViolation(
        "benchmark plan needs exactly one of scenario / libsvm path");
  }
}

PreparedProblem prepare_problem(const BenchmarkPlan& plan) {
  check_problem_source(plan);
  PreparedProblem prep;
  DesignMatrix raw;
  if (plan.scenario) {
    const SimulatedProblem sim = simulate(*plan.scenario);
    raw = sim.X;
    prep.y = sim.y;
    prep.tag = "sim_n" + std::to_string(plan.scenario->n) + "_p" +
               std::to_string(plan.scenario->p);
    prep.description = {{"source", "simulate"},
                        {"n", plan.scenario->n},
                        {"p", plan.scenario->p},
                        {"k", plan.scenario->k},
                        {"density", plan.scenario->density},
                        {"rho_corr", plan.scenario->rho_corr},
                        {"snr", plan.scenario->snr},
                        {"seed", plan.scenario->seed}};
  } else {
    auto [X, y] = read_libsvm(plan.libsvm_path);
    raw = std::move(X);
    prep.y = std::move(y);
    prep.tag = "libsvm_" + fs::path(plan.libsvm_path).stem().string();
    prep.description = {{"source", "libsvm"}, {"path", plan.libsvm_path}};
  }
  PreprocessResult pre = preprocess(raw, !raw.is_sparse());
  prep.X = std::move(pre.X);
  prep.description["n_rows"] = prep.X.rows();
  prep.description["n_cols_used"] = prep.X.cols();
  prep.description["n_cols_dropped"] = pre.dropped.size();

  prep.lambda_base = bh_lambda(prep.X.cols(), plan.q);
  prep.lambda_max = lambda_max_scale(prep.X, prep.y, prep.lambda_base);
  return prep;
}

struct Reference {
  Vector beta;
  double primal = 0.0;
  bool ok = false;
  bool certificate = false;
  std::string diagnostic;
};

Reference compute_reference(const Problem& problem,
                            const BenchmarkPlan& plan) {
  Reference ref;
  SolverConfig cfg;
  cfg.solver = SolverKind::Hybrid;
  cfg.tol = plan.ref_tol;
  cfg.max_epochs = 200000;
  cfg.seed = plan.seed;

  SolveResult run = hybrid_solve(problem, cfg, Vector::Zero(problem.n_features()));
  const auto certificate = [&](const Vector& beta) {
    const Vector grad =
        -problem.X.multiply_transpose(problem.X.multiply(beta) - problem.y);
    return check_subdifferential(beta, grad, problem.lambda, 1e-6);
  };
  bool cert = run.trace.converged && certificate(run.beta);
  if (!cert) {
    // fallback reference: FISTA with a tenfold budget
    SolverConfig fb = cfg;
    fb.solver = SolverKind::Fista;
    fb.max_epochs = 10 * cfg.max_epochs;
    SolveResult fista = fista_solve(problem, fb, Vector::Zero(problem.n_features()));
    if (primal_objective(problem, fista.beta) <
        primal_objective(problem, run.beta)) {
      run = std::move(fista);
    }
    cert = certificate(run.beta);
    if (!run.trace.converged && !cert) {
      ref.diagnostic = "reference solve did not converge: " + run.trace.note;
      return ref;
    }
  }
  ref.beta = std::move(run.beta);
  ref.primal = primal_objective(problem, ref.beta);
  ref.certificate = cert;
  ref.ok = true;
  return ref;
}

struct NamedRun {
  std::string name;
  ConvergenceTrace trace;
};

void write_cell_csv(const std::string& path, const std::vector<NamedRun>& runs,
                    double ref_primal) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out << "solver,epoch,time_s,primal,subopt,gap\n";
  for (const auto& run : runs) {
    for (const auto& rec : run.trace.records) {
      out << run.name << ',' << rec.epoch << ',' << fmt(rec.wall_time, "%.9g")
          << ',' << fmt(rec.primal) << ',' << fmt(rec.primal - ref_primal)
          << ',' << fmt(rec.gap) << '\n';
    }
  }
  if (!out) throw DataError("failed writing " + path);
}

SolveResult run_entry(const Problem& problem, const SolverEntry& entry,
                      const BenchmarkPlan& plan, const Reference& ref) {
  SolverConfig cfg = entry.config;
  cfg.max_time = std::min(cfg.max_time, plan.time_budget);
  if (cfg.solver == SolverKind::OracleCd) {
    const ClusterStructure oracle = build_clusters(ref.beta);
    Vector signs(ref.beta.size());
    for (Index j = 0; j < ref.beta.size(); ++j) {
      signs[j] = ref.beta[j] > 0.0 ? 1.0 : (ref.beta[j] < 0.0 ? -1.0 : 0.0);
    }
    return oracle_cd_solve(problem, cfg, oracle, signs);
  }
  return solve(problem, cfg, Vector::Zero(problem.n_features()));
}

unsigned worker_count(const BenchmarkPlan& plan, std::size_t cells) {
  if (plan.serial) return 1;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SLOPE_BENCH_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) workers = static_cast<unsigned>(parsed);
  }
  return std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, cells)));
}

json solver_manifest(const std::vector<SolverEntry>& entries) {
  json list = json::array();
  for (const auto& entry : entries) {
    list.push_back({{"name", entry.name},
                    {"digest", config_digest(entry.config)},
                    {"tol", entry.config.tol},
                    {"seed", entry.config.seed}});
  }
  return list;
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkPlan& plan) {
  if (plan.solvers.empty()) {
    throw ContractViolation("benchmark plan needs at least one solver");
  }
  for (double f : plan.reg_fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw ContractViolation("regularization fractions must lie in (0, 1]");
    }
  }
  check_problem_source(plan);
  fs::create_directories(plan.out_dir);
  const PreparedProblem prep = prepare_problem(plan);

  BenchmarkResult result;
  result.cells.resize(plan.reg_fractions.size());

  const auto run_cell = [&](std::size_t idx) {
    CellOutcome& cell = result.cells[idx];
    cell.fraction = plan.reg_fractions[idx];
    const LambdaSequence lam =
        prep.lambda_base.scaled(cell.fraction * prep.lambda_max);
    const Problem problem(prep.X, prep.y, lam);

    const Reference ref = compute_reference(problem, plan);
    cell.ref_certificate = ref.certificate;
    if (!ref.ok) {
      cell.ok = false;
      cell.diagnostic = ref.diagnostic;
      return;
    }
    cell.ref_primal = ref.primal;

    std::vector<NamedRun> runs;
    runs.reserve(plan.solvers.size());
    for (const auto& entry : plan.solvers) {
      SolveResult solved = run_entry(problem, entry, plan, ref);
      runs.push_back({entry.name, std::move(solved.trace)});
    }
    const std::string file =
        prep.tag + "_frac" + std::to_string(idx) + ".csv";
    cell.csv_path = (fs::path(plan.out_dir) / file).string();
    write_cell_csv(cell.csv_path, runs, ref.primal);
    cell.ok = true;
  };

  const unsigned workers = worker_count(plan, result.cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < result.cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < result.cells.size();
             i = next.fetch_add(1)) {
          run_cell(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  json manifest = {{"problem", prep.description},
                   {"q", plan.q},
                   {"lambda_max_scale", prep.lambda_max},
                   {"fractions", plan.reg_fractions},
                   {"reference",
                    {{"tol", plan.ref_tol}, {"certificate_tol", 1e-6}}},
                   {"seed", plan.seed},
                   {"time_budget", plan.time_budget},
                   {"solvers", solver_manifest(plan.solvers)}};
  json cells = json::array();
  for (const auto& cell : result.cells) {
    cells.push_back({{"fraction", cell.fraction},
                     {"file", cell.csv_path},
                     {"ok", cell.ok},
                     {"ref_primal", cell.ref_primal},
                     {"ref_certificate", cell.ref_certificate},
                     {"diagnostic", cell.diagnostic}});
  }
  manifest["cells"] = cells;
  result.manifest_path = (fs::path(plan.out_dir) / "manifest.json").string();
  std::ofstream out(result.manifest_path);
  out << manifest.dump(2) << '\n';
  if (!out) throw DataError("failed writing " + result.manifest_path);
  return result;
}

BenchmarkResult sweep_v(const BenchmarkPlan& plan,
                        const std::vector<int>& v_values) {
  const bool has_hybrid =
      std::any_of(plan.solvers.begin(), plan.solvers.end(), [](const auto& e) {
        return e.config.solver == SolverKind::Hybrid;
      });
  if (!has_hybrid) {
    throw ContractViolation("sweep_v needs a hybrid solver in the plan");
  }
  if (plan.reg_fractions.empty() || v_values.empty()) {
    throw ContractViolation("sweep_v needs a fraction and at least one v");
  }
  check_problem_source(plan);
  fs::create_directories(plan.out_dir);
  const PreparedProblem prep = prepare_problem(plan);

  const double fraction = plan.reg_fractions.front();
  const LambdaSequence lam = prep.lambda_base.scaled(fraction * prep.lambda_max);
  const Problem problem(prep.X, prep.y, lam);
  const Reference ref = compute_reference(problem, plan);

  SolverConfig base;
  for (const auto& entry : plan.solvers) {
    if (entry.config.solver == SolverKind::Hybrid) {
      base = entry.config;
      break;
    }
  }

  BenchmarkResult result;
  result.cells.resize(v_values.size());
  if (!ref.ok) {
    for (std::size_t i = 0; i < v_values.size(); ++i) {
      result.cells[i].fraction = fraction;
      result.cells[i].diagnostic = ref.diagnostic;
    }
    return result;
  }

  const auto run_one = [&](std::size_t idx) {
    CellOutcome& cell = result.cells[idx];
    cell.fraction = fraction;
    cell.ref_primal = ref.primal;
    cell.ref_certificate = ref.certificate;
    SolverConfig cfg = base;
    cfg.pgd_frequency = v_values[idx];
    cfg.max_time = std::min(cfg.max_time, plan.time_budget);
    SolveResult solved =
        hybrid_solve(problem, cfg, Vector::Zero(problem.n_features()));
    const std::string name = "hybrid_v" + std::to_string(v_values[idx]);
    cell.csv_path =
        (fs::path(plan.out_dir) / ("sweep_v" + std::to_string(v_values[idx]) + ".csv"))
            .string();
    write_cell_csv(cell.csv_path, {{name, std::move(solved.trace)}}, ref.primal);
    cell.ok = true;
  };

  const unsigned workers = worker_count(plan, v_values.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < v_values.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < v_values.size();
             i = next.fetch_add(1)) {
          run_one(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  json manifest = {{"problem", prep.description},
                   {"q", plan.q},
                   {"fraction", fraction},
                   {"lambda_max_scale", prep.lambda_max},
                   {"reference",
                    {{"tol", plan.ref_tol}, {"ref_primal", ref.primal}}},
                   {"v_values", v_values},
                   {"seed", plan.seed}};
  result.manifest_path = (fs::path(plan.out_dir) / "sweep_manifest.json").string();
  std::ofstream out(result.manifest_path);
  out << manifest.dump(2) << '\n';
  return result;
}

ScenarioSpec table_scenario(int which) {
  ScenarioSpec spec;
  switch (which) {
    case 1: spec.n = 200;   spec.p = 20000;  spec.k = 20; spec.density = 1.0;   break;
    case 2: spec.n = 20000; spec.p = 200;    spec.k = 40; spec.density = 1.0;   break;
    case 3: spec.n = 200;   spec.p = 200000; spec.k = 20; spec.density = 0.001; break;
    default:
      throw ContractViolation("scenario number must be 1, 2 or 3");
  }
  return spec;
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "solver,epoch,time_s,primal,subopt,gap") {
    throw DataError(path + ": unexpected trace header");
  }
  std::vector<TraceRow> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    TraceRow row;
    std::string field;
    try {
      std::getline(fields, row.solver, ',');
      std::getline(fields, field, ',');
      row.epoch = std::stol(field);
      std::getline(fields, field, ',');
      row.time_s = std::stod(field);
      std::getline(fields, field, ',');
      row.primal = std::stod(field);
      std::getline(fields, field, ',');
      row.subopt = std::stod(field);
      std::getline(fields, field, ',');
      row.gap = std::stod(field);
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(line_no) + ": bad trace row");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace slope
