#include "doctest.h"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "oracles.hpp"
#include "slope/cd_kernel.hpp"
#include "slope/rng.hpp"
#include "slope/solvers.hpp"
#include "slope/sorted_l1.hpp"

using namespace slope;

namespace {

Problem make_problem(const oracles::RandomProblem& rp) {
  return Problem(DesignMatrix::dense(rp.X), rp.y, LambdaSequence(rp.lambda));
}

SolverConfig config_for(SolverKind kind, double tol = 1e-10,
                        long max_epochs = 100000) {
  SolverConfig cfg;
  cfg.solver = kind;
  cfg.tol = tol;
  cfg.max_epochs = max_epochs;
  return cfg;
}

bool same_partition(const ClusterStructure& a, const ClusterStructure& b) {
  return a.members == b.members;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("spectral norm examples") {
  CHECK(spectral_norm_sq(DesignMatrix::dense(Eigen::MatrixXd::Identity(5, 5)),
                         1e-10, 1) == doctest::Approx(1.0).epsilon(1e-9));

  Rng rng(101);
  const Vector u = rng.normal_vector(6);
  const Vector v = rng.normal_vector(4);
  const Eigen::MatrixXd rank1 = u * v.transpose();
  CHECK(spectral_norm_sq(DesignMatrix::dense(rank1), 1e-10, 2) ==
        doctest::Approx(u.squaredNorm() * v.squaredNorm()).epsilon(1e-8));

  Eigen::MatrixXd wide(20, 30);
  for (Index i = 0; i < 20; ++i) {
    for (Index j = 0; j < 30; ++j) wide(i, j) = rng.normal();
  }
  const double svd =
      Eigen::JacobiSVD<Eigen::MatrixXd>(wide).singularValues()[0];
  CHECK(spectral_norm_sq(DesignMatrix::dense(wide), 1e-9, 3) ==
        doctest::Approx(svd * svd).epsilon(1e-6));

  CHECK(spectral_norm_sq(DesignMatrix::dense(Eigen::MatrixXd::Zero(3, 2)),
                         1e-6, 4) == 0.0);
}

TEST_CASE("unpenalized orthonormal problem converges to y for every solver") {
  Vector y(3);
  y << 1.0, -2.0, 0.5;
  Problem problem(DesignMatrix::dense(Eigen::MatrixXd::Identity(3, 3)), y,
                  LambdaSequence(Vector::Zero(3)));
  for (SolverKind kind : {SolverKind::Pgd, SolverKind::Fista,
                          SolverKind::AndersonPgd, SolverKind::Admm}) {
    SolverConfig cfg = config_for(kind, 1e-14, 2000);
    const SolveResult res = solve(problem, cfg, Vector::Zero(3));
    // with no penalty the gap equals 0.5 ||beta - y||^2, so tol 1e-14
    // certifies the distance only up to sqrt(2e-14)
    CHECK((res.beta - y).lpNorm<Eigen::Infinity>() <= 2e-7);
  }
}

TEST_CASE("hybrid at the critical penalty returns zero immediately") {
  Rng rng(103);
  for (int rep = 0; rep < 10; ++rep) {
    const oracles::RandomProblem rp = oracles::random_problem(rng, 10, 6, 1.0);
    const Problem problem = make_problem(rp);
    SolverConfig cfg = config_for(SolverKind::Hybrid);
    const SolveResult res = hybrid_solve(problem, cfg, Vector::Zero(6));
    CHECK(res.trace.converged);
    CHECK(res.trace.records.back().epoch <= 2);
    CHECK(res.beta.lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("hybrid with v = 1 reproduces the pgd iterate sequence exactly") {
  Rng rng(107);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 12, 8, 0.2);
  const Problem problem = make_problem(rp);

  SolverConfig hybrid_cfg = config_for(SolverKind::Hybrid, 1e-10, 400);
  hybrid_cfg.pgd_frequency = 1;
  SolverConfig pgd_cfg = config_for(SolverKind::Pgd, 1e-10, 400);

  const SolveResult h = hybrid_solve(problem, hybrid_cfg, Vector::Zero(8));
  const SolveResult g = pgd_solve(problem, pgd_cfg, Vector::Zero(8));

  REQUIRE(h.trace.records.size() == g.trace.records.size());
  for (std::size_t i = 0; i < h.trace.records.size(); ++i) {
    CHECK(h.trace.records[i].epoch == g.trace.records[i].epoch);
    CHECK(h.trace.records[i].primal == g.trace.records[i].primal);
    CHECK(h.trace.records[i].gap == g.trace.records[i].gap);
  }
  CHECK(h.beta == g.beta);
}

TEST_CASE("all solvers agree on shared instances") {
  Rng rng(109);
  for (int rep = 0; rep < 3; ++rep) {
    const double fraction = rep == 0 ? 0.5 : (rep == 1 ? 0.1 : 0.02);
    const oracles::RandomProblem rp =
        oracles::random_problem(rng, 20, 12, fraction);
    const Problem problem = make_problem(rp);
    const Vector zero = Vector::Zero(12);

    const SolveResult hybrid =
        hybrid_solve(problem, config_for(SolverKind::Hybrid, 1e-12), zero);
    REQUIRE(hybrid.trace.converged);
    const double target = primal_objective(problem, hybrid.beta);
    const double scale = std::max(1.0, std::abs(target));

    for (SolverKind kind :
         {SolverKind::Pgd, SolverKind::Fista, SolverKind::AndersonPgd}) {
      const SolveResult res =
          solve(problem, config_for(kind, 1e-12, 300000), zero);
      CHECK(res.trace.converged);
      CHECK(std::abs(primal_objective(problem, res.beta) - target) <=
            1e-8 * scale);
    }
    const SolveResult admm =
        admm_solve(problem, config_for(SolverKind::Admm, 1e-9, 300000), zero);
    CHECK(admm.trace.converged);
    CHECK(std::abs(primal_objective(problem, admm.beta) - target) <=
          1e-6 * scale);

    // oracle CD seeded from the hybrid solution
    SolverConfig oracle_cfg = config_for(SolverKind::OracleCd, 1e-13, 200000);
    Vector signs(12);
    for (Index j = 0; j < 12; ++j) {
      signs[j] =
          hybrid.beta[j] > 0.0 ? 1.0 : (hybrid.beta[j] < 0.0 ? -1.0 : 0.0);
    }
    const SolveResult oracle = oracle_cd_solve(
        problem, oracle_cfg, build_clusters(hybrid.beta), signs);
    CHECK(std::abs(primal_objective(problem, oracle.beta) - target) <=
          1e-10 * scale);
  }
}

TEST_CASE("pgd descends monotonically; fista converges without monotonicity") {
  Rng rng(113);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 15, 10, 0.1);
  const Problem problem = make_problem(rp);
  const Vector zero = Vector::Zero(10);

  const SolveResult pgd =
      pgd_solve(problem, config_for(SolverKind::Pgd, 1e-10, 200000), zero);
  CHECK(pgd.trace.converged);
  for (std::size_t i = 1; i < pgd.trace.records.size(); ++i) {
    CHECK(pgd.trace.records[i].primal <=
          pgd.trace.records[i - 1].primal + 1e-12);
  }
  const SolveResult fista =
      fista_solve(problem, config_for(SolverKind::Fista, 1e-10, 200000), zero);
  CHECK(fista.trace.converged);
}

TEST_CASE("admm reaches the same objective for rho in {10, 100, 1000}") {
  Rng rng(127);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 18, 10, 0.1);
  const Problem problem = make_problem(rp);
  const Vector zero = Vector::Zero(10);

  double reference = std::numeric_limits<double>::quiet_NaN();
  for (double rho : {10.0, 100.0, 1000.0}) {
    SolverConfig cfg = config_for(SolverKind::Admm, 1e-10, 400000);
    cfg.rho = rho;
    const SolveResult res = admm_solve(problem, cfg, zero);
    CHECK(res.trace.converged);
    const double objective = primal_objective(problem, res.beta);
    if (std::isnan(reference)) {
      reference = objective;
    } else {
      CHECK(objective ==
            doctest::Approx(reference).epsilon(1e-7).scale(std::abs(reference)));
    }
  }
}

TEST_CASE("admm uses the woodbury path when p > n") {
  Rng rng(131);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 8, 14, 0.2);
  const Problem problem = make_problem(rp);
  const SolveResult admm = admm_solve(
      problem, config_for(SolverKind::Admm, 1e-9, 300000), Vector::Zero(14));
  CHECK(admm.trace.converged);
  const SolveResult hybrid = hybrid_solve(
      problem, config_for(SolverKind::Hybrid, 1e-12), Vector::Zero(14));
  const double target = primal_objective(problem, hybrid.beta);
  CHECK(std::abs(primal_objective(problem, admm.beta) - target) <=
        1e-6 * std::max(1.0, std::abs(target)));
}

TEST_CASE("admm solves sparse designs through lsqr") {
  Rng rng(137);
  // sparse CSC design
  const Index n = 20, p = 12;
  std::vector<Index> col_ptr(p + 1, 0);
  std::vector<Index> row_idx;
  std::vector<double> values;
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (rng.uniform() < 0.3) {
        row_idx.push_back(i);
        values.push_back(rng.normal());
      }
    }
    col_ptr[j + 1] = static_cast<Index>(values.size());
  }
  const DesignMatrix X = DesignMatrix::sparse(n, p, col_ptr, row_idx, values);
  const Vector y = rng.normal_vector(n);
  LambdaSequence base = LambdaSequence(Vector::Constant(p, 1.0));
  Vector lam(p);
  double level = 1.0;
  for (Index j = 0; j < p; ++j) {
    lam[j] = level;
    level *= 0.85;
  }
  const double alpha =
      dual_ball_scaling(X.multiply_transpose(y), LambdaSequence(lam)).alpha;
  const Problem problem(X, y, LambdaSequence(lam * (0.2 * alpha)));

  const SolveResult admm = admm_solve(
      problem, config_for(SolverKind::Admm, 1e-9, 300000), Vector::Zero(p));
  CHECK(admm.trace.converged);
  const SolveResult hybrid = hybrid_solve(
      problem, config_for(SolverKind::Hybrid, 1e-12), Vector::Zero(p));
  const double target = primal_objective(problem, hybrid.beta);
  CHECK(std::abs(primal_objective(problem, admm.beta) - target) <=
        1e-6 * std::max(1.0, std::abs(target)));
}

TEST_CASE("oracle cd reductions") {
  Rng rng(139);
  const Index n = 9, p = 5;
  Eigen::MatrixXd X(n, p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) X(i, j) = rng.normal();
  }
  const Vector y = rng.normal_vector(n);

  SUBCASE("empty cluster set returns zero") {
    Problem problem(DesignMatrix::dense(X), y,
                    LambdaSequence(Vector::Constant(p, 1.0)));
    const ClusterStructure zero_clusters = build_clusters(Vector::Zero(p));
    const SolveResult res =
        oracle_cd_solve(problem, config_for(SolverKind::OracleCd), zero_clusters,
                        Vector::Zero(p));
    CHECK(res.beta.lpNorm<Eigen::Infinity>() == 0.0);
  }

  SUBCASE("one nonzero cluster has the scalar soft-threshold solution") {
    const double t = 0.6;
    Problem problem(DesignMatrix::dense(X), y,
                    LambdaSequence(Vector::Constant(p, t)));
    Vector pattern(p);
    pattern << 1.0, -1.0, 1.0, 1.0, -1.0;
    const ClusterStructure cs = build_clusters(pattern);
    REQUIRE(cs.size() == 1);
    const SolveResult res = oracle_cd_solve(
        problem, config_for(SolverKind::OracleCd, 1e-13), cs, pattern);

    Vector col = Vector::Zero(n);
    for (Index j = 0; j < p; ++j) col += pattern[j] * X.col(j);
    const double pivot = col.dot(y);
    const double mag = std::abs(pivot) - t * static_cast<double>(p);
    const double z_closed =
        mag <= 0.0 ? 0.0 : std::copysign(mag, pivot) / col.squaredNorm();
    for (Index j = 0; j < p; ++j) {
      CHECK(res.beta[j] ==
            doctest::Approx(pattern[j] * z_closed).epsilon(1e-12));
    }
  }

  SUBCASE("singleton clusters with equal lambda are plain lasso cd") {
    const double t = 0.8;
    Problem problem(DesignMatrix::dense(X), y,
                    LambdaSequence(Vector::Constant(p, t)));
    const SolveResult hybrid = hybrid_solve(
        problem, config_for(SolverKind::Hybrid, 1e-13), Vector::Zero(p));
    // use the solution's own structure; with distinct magnitudes these are
    // singletons plus a zero cluster
    Vector signs(p);
    for (Index j = 0; j < p; ++j) {
      signs[j] =
          hybrid.beta[j] > 0.0 ? 1.0 : (hybrid.beta[j] < 0.0 ? -1.0 : 0.0);
    }
    const SolveResult res =
        oracle_cd_solve(problem, config_for(SolverKind::OracleCd, 1e-13),
                        build_clusters(hybrid.beta), signs);
    const double target = primal_objective(problem, hybrid.beta);
    CHECK(std::abs(primal_objective(problem, res.beta) - target) <=
          1e-10 * std::max(1.0, std::abs(target)));
  }
}

TEST_CASE("identical configurations reproduce identical traces") {
  Rng rng(149);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 14, 9, 0.1);
  const Problem problem = make_problem(rp);
  for (SolverKind kind : {SolverKind::Hybrid, SolverKind::Pgd,
                          SolverKind::Fista, SolverKind::AndersonPgd,
                          SolverKind::Admm}) {
    SolverConfig cfg = config_for(kind, 1e-10, 20000);
    cfg.seed = 42;
    const SolveResult a = solve(problem, cfg, Vector::Zero(9));
    const SolveResult b = solve(problem, cfg, Vector::Zero(9));
    REQUIRE(a.trace.records.size() == b.trace.records.size());
    for (std::size_t i = 0; i < a.trace.records.size(); ++i) {
      CHECK(a.trace.records[i].epoch == b.trace.records[i].epoch);
      CHECK(a.trace.records[i].primal == b.trace.records[i].primal);
      CHECK(a.trace.records[i].gap == b.trace.records[i].gap);
    }
    CHECK(a.beta == b.beta);
    CHECK(a.trace.config_digest == b.trace.config_digest);
  }
}

TEST_CASE("hybrid descends at every epoch and identifies the clusters") {
  Rng rng(151);
  for (int rep = 0; rep < 8; ++rep) {
    const double fraction = rep % 3 == 0 ? 0.5 : (rep % 3 == 1 ? 0.1 : 0.02);
    const oracles::RandomProblem rp =
        oracles::random_problem(rng, 16, 20, fraction);
    const Problem problem = make_problem(rp);
    SolverConfig cfg = config_for(SolverKind::Hybrid, 1e-12, 50000);
    const SolveResult res = hybrid_solve(problem, cfg, Vector::Zero(20));
    REQUIRE(res.trace.converged);
    for (std::size_t i = 1; i < res.trace.records.size(); ++i) {
      CHECK(res.trace.records[i].primal <=
            res.trace.records[i - 1].primal + 1e-12);
      CHECK(res.trace.records[i].gap >= -1e-12);
    }

    // one extra full proximal-gradient step leaves the partition unchanged
    const double curvature =
        std::max(spectral_norm_sq(problem.X, 1e-4, cfg.seed),
                 std::numeric_limits<double>::min()) *
        1.02;
    const Vector grad = problem.X.multiply_transpose(
        problem.X.multiply(res.beta) - problem.y);
    const Vector stepped = prox_sorted_l1(
        res.beta - grad / curvature, problem.lambda.scaled(1.0 / curvature));
    CHECK(same_partition(build_clusters(res.beta), build_clusters(stepped)));
  }
}

TEST_CASE("warm starts converge to the same objective") {
  Rng rng(211);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 16, 12, 0.1);
  const Problem problem = make_problem(rp);
  const SolverConfig cfg = config_for(SolverKind::Hybrid, 1e-12);
  const SolveResult cold = hybrid_solve(problem, cfg, Vector::Zero(12));
  REQUIRE(cold.trace.converged);
  const double target = primal_objective(problem, cold.beta);
  for (int rep = 0; rep < 5; ++rep) {
    const Vector start = rng.normal_vector(12) * (0.5 + 2.0 * rng.uniform());
    const SolveResult warm = hybrid_solve(problem, cfg, start);
    CHECK(warm.trace.converged);
    CHECK(std::abs(primal_objective(problem, warm.beta) - target) <=
          1e-9 * std::max(1.0, std::abs(target)));
  }
}

TEST_CASE("exhausted budgets flag the trace") {
  Rng rng(157);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 12, 8, 0.02);
  const Problem problem = make_problem(rp);
  SolverConfig cfg = config_for(SolverKind::Pgd, 1e-14, 3);
  const SolveResult res = pgd_solve(problem, cfg, Vector::Zero(8));
  CHECK_FALSE(res.trace.converged);
  CHECK(res.trace.note.find("not converged") != std::string::npos);
  CHECK(res.trace.records.back().epoch == 3);
}

TEST_CASE("lipschitz-time exclusion changes timing only") {
  Rng rng(193);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 12, 9, 0.1);
  const Problem problem = make_problem(rp);
  SolverConfig plain = config_for(SolverKind::Hybrid, 1e-10, 5000);
  SolverConfig excluded = plain;
  excluded.exclude_lipschitz_time = true;
  const SolveResult a = hybrid_solve(problem, plain, Vector::Zero(9));
  const SolveResult b = hybrid_solve(problem, excluded, Vector::Zero(9));
  REQUIRE(a.trace.records.size() == b.trace.records.size());
  for (std::size_t i = 0; i < a.trace.records.size(); ++i) {
    CHECK(a.trace.records[i].primal == b.trace.records[i].primal);
    CHECK(a.trace.records[i].gap == b.trace.records[i].gap);
  }
  CHECK(a.beta == b.beta);
}

TEST_CASE("checkpoint cadence controls the trace density") {
  Rng rng(197);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 14, 10, 0.1);
  const Problem problem = make_problem(rp);
  SolverConfig cfg = config_for(SolverKind::Pgd, 1e-30, 20);  // run to budget
  cfg.checkpoint_every = 7;
  const SolveResult res = pgd_solve(problem, cfg, Vector::Zero(10));
  std::vector<long> epochs;
  for (const auto& rec : res.trace.records) epochs.push_back(rec.epoch);
  CHECK(epochs == std::vector<long>{0, 7, 14, 20});  // cadence plus the final
}

TEST_CASE("a zero time budget stops after one epoch with a flagged trace") {
  Rng rng(199);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 10, 8, 0.1);
  const Problem problem = make_problem(rp);
  SolverConfig cfg = config_for(SolverKind::Pgd, 1e-30, 100000);
  cfg.max_time = 0.0;
  const SolveResult res = pgd_solve(problem, cfg, Vector::Zero(8));
  CHECK_FALSE(res.trace.converged);
  CHECK(res.trace.note.find("time budget") != std::string::npos);
  CHECK(res.trace.records.back().epoch == 1);
}

TEST_CASE("trace primal matches a from-scratch evaluation at the end") {
  Rng rng(163);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 13, 11, 0.1);
  const Problem problem = make_problem(rp);
  const SolveResult res = hybrid_solve(
      problem, config_for(SolverKind::Hybrid, 1e-12), Vector::Zero(11));
  REQUIRE(res.trace.converged);
  const double reported = res.trace.records.back().primal;
  const double fresh = primal_objective(problem, res.beta);
  CHECK(std::abs(reported - fresh) <= 1e-10 * std::max(1.0, std::abs(fresh)));
}

TEST_CASE("solver and config kind must match; tolerance must be positive") {
  Rng rng(167);
  const oracles::RandomProblem rp = oracles::random_problem(rng, 6, 4, 0.5);
  const Problem problem = make_problem(rp);
  SolverConfig cfg = config_for(SolverKind::Pgd);
  CHECK_THROWS_AS(hybrid_solve(problem, cfg, Vector::Zero(4)),
                  ContractViolation);
  cfg.tol = 0.0;
  CHECK_THROWS_AS(pgd_solve(problem, cfg, Vector::Zero(4)), ContractViolation);

  SolverConfig admm_cfg = config_for(SolverKind::Admm);
  admm_cfg.rho = 0.0;
  CHECK_THROWS_AS(admm_solve(problem, admm_cfg, Vector::Zero(4)),
                  ContractViolation);
  CHECK_THROWS_AS(make_state(problem, Vector::Zero(7)), ContractViolation);
}

TEST_CASE("hybrid agrees across dense and sparse storage of one matrix") {
  Rng rng(179);
  const Index n = 14, p = 10;
  std::vector<Index> col_ptr(p + 1, 0);
  std::vector<Index> row_idx;
  std::vector<double> values;
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (rng.uniform() < 0.45) {
        row_idx.push_back(i);
        values.push_back(rng.normal());
      }
    }
    col_ptr[j + 1] = static_cast<Index>(values.size());
  }
  const DesignMatrix sparse = DesignMatrix::sparse(n, p, col_ptr, row_idx, values);
  const DesignMatrix dense = DesignMatrix::dense(oracles::densify(sparse));
  const Vector y = rng.normal_vector(n);
  Vector lam(p);
  for (Index j = 0; j < p; ++j) {
    lam[j] = oracles::probit_bisect(1.0 - 0.1 * static_cast<double>(j + 1) /
                                              (2.0 * static_cast<double>(p)));
  }
  const double alpha =
      dual_ball_scaling(sparse.multiply_transpose(y), LambdaSequence(lam)).alpha;
  const LambdaSequence scaled(lam * (0.1 * alpha));

  const SolverConfig cfg = config_for(SolverKind::Hybrid, 1e-12);
  const SolveResult a =
      hybrid_solve(Problem(sparse, y, scaled), cfg, Vector::Zero(p));
  const SolveResult b =
      hybrid_solve(Problem(dense, y, scaled), cfg, Vector::Zero(p));
  REQUIRE(a.trace.converged);
  REQUIRE(b.trace.converged);
  CHECK((a.beta - b.beta).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("scalar problem recovers the closed-form soft threshold") {
  Rng rng(181);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXd X(6, 1);
    for (Index i = 0; i < 6; ++i) X(i, 0) = rng.normal();
    const Vector y = rng.normal_vector(6);
    const double t = 0.3 + rng.uniform();
    Problem problem(DesignMatrix::dense(X), y,
                    LambdaSequence(Vector::Constant(1, t)));
    const SolveResult res = hybrid_solve(
        problem, config_for(SolverKind::Hybrid, 1e-14), Vector::Zero(1));
    const double pivot = X.col(0).dot(y);
    const double mag = std::abs(pivot) - t;
    const double want =
        mag <= 0.0 ? 0.0 : std::copysign(mag, pivot) / X.col(0).squaredNorm();
    CHECK(res.beta[0] == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("a cluster whose signed columns cancel collapses to zero") {
  Rng rng(191);
  Eigen::MatrixXd X(5, 2);
  X.col(0) = rng.normal_vector(5);
  X.col(1) = X.col(0);  // identical columns
  const Vector y = rng.normal_vector(5);
  Vector lam(2);
  lam << 0.9, 0.4;
  Problem problem(DesignMatrix::dense(X), y, LambdaSequence(lam));

  Vector beta0(2);
  beta0 << 1.0, -1.0;  // one cluster; x_tilde = X_0 - X_1 = 0
  SolverState state = make_state(problem, beta0);
  const double before = primal_objective(problem, state.beta);
  cd_epoch(state, problem);
  CHECK(state.beta.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(primal_objective(problem, state.beta) <= before + 1e-12);
  const Vector fresh = problem.X.multiply(state.beta) - problem.y;
  CHECK((state.residual - fresh).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("hybrid optimum matches the two-dimensional grid oracle") {
  Rng rng(173);
  for (int rep = 0; rep < 6; ++rep) {
    Eigen::MatrixXd X(5, 2);
    for (Index i = 0; i < 5; ++i) {
      for (Index j = 0; j < 2; ++j) X(i, j) = rng.normal();
    }
    const Vector y = rng.normal_vector(5);
    Vector lam(2);
    lam << 0.8 + rng.uniform(), 0.4 * rng.uniform();
    Problem problem(DesignMatrix::dense(X), y, LambdaSequence(lam));

    const SolveResult res = hybrid_solve(
        problem, config_for(SolverKind::Hybrid, 1e-13), Vector::Zero(2));
    REQUIRE(res.trace.converged);

    const auto objective = [&](double b1, double b2) {
      Vector beta(2);
      beta << b1, b2;
      return oracles::objective_direct(X, y, lam, beta);
    };
    const Eigen::Vector2d opt = oracles::grid_refine_2d(objective, 0.0, 0.0, 4.0);
    const double best = objective(opt[0], opt[1]);
    CHECK(primal_objective(problem, res.beta) <= best + 1e-8);
    CHECK(primal_objective(problem, res.beta) >= best - 1e-8);
  }
}

}  // TEST_SUITE
