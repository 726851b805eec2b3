#pragma once

#include <cstdint>
#include <limits>

#include "slope/state.hpp"

namespace slope {

enum class SolverKind { Hybrid, Pgd, Fista, AndersonPgd, Admm, OracleCd };

const char* solver_kind_name(SolverKind kind);

struct SolverConfig {
  SolverKind solver = SolverKind::Hybrid;
  int pgd_frequency = 5;     // hybrid: a PGD step every v-th epoch
  double rho = 100.0;        // ADMM augmented-Lagrangian parameter
  int anderson_memory = 5;   // Anderson extrapolation history
  double tol = 1e-10;        // duality-gap stopping threshold
  long max_epochs = 100000;
  double max_time = std::numeric_limits<double>::infinity();  // seconds
  long checkpoint_every = 1;  // epochs between trace records
  std::uint64_t seed = 0;
  // When set, the spectral-norm estimation time is excluded from the trace
  // clock (the CD steps do not need the step size, only the PGD steps do).
  bool exclude_lipschitz_time = false;
};

std::string config_digest(const SolverConfig& config);

struct SolveResult {
  Vector beta;
  ConvergenceTrace trace;
};

/// ||X||_2^2 by power iteration on X^T X with a seeded start vector.
/// Deterministic given the seed; returns 0 for a zero matrix.
double spectral_norm_sq(const DesignMatrix& X, double tol, std::uint64_t seed);

/// Hybrid solver: a full proximal-gradient step on the first epoch and every
/// v-th epoch after it (the step that can split clusters and identify the
/// cluster structure), coordinate-descent epochs otherwise.
SolveResult hybrid_solve(const Problem& problem, const SolverConfig& config,
                         const Vector& beta0);

/// Proximal gradient descent with fixed step 1/||X||_2^2.
SolveResult pgd_solve(const Problem& problem, const SolverConfig& config,
                      const Vector& beta0);

/// FISTA with the standard momentum sequence; objective may be non-monotone.
SolveResult fista_solve(const Problem& problem, const SolverConfig& config,
                        const Vector& beta0);

/// Type-II Anderson extrapolation on the PGD fixed-point map, guarded: an
/// extrapolated point that increases the objective is replaced by the plain
/// PGD point for that iteration.
SolveResult anderson_pgd_solve(const Problem& problem,
                               const SolverConfig& config,
                               const Vector& beta0);

/// ADMM on the splitting beta = w. Dense X uses a cached factorization of
/// (X^T X + rho I), or of (X X^T + rho I) via the matrix-inversion identity
/// when p > n; sparse X solves the stacked least-squares system with LSQR.
SolveResult admm_solve(const Problem& problem, const SolverConfig& config,
                       const Vector& beta0);

/// Coordinate descent on the separable problem obtained by fixing the
/// solution's clusters and signs (a lower-bound baseline, not a practical
/// solver). Starts from z = 0 and stops on its own weighted-lasso duality
/// gap.
SolveResult oracle_cd_solve(const Problem& problem, const SolverConfig& config,
                            const ClusterStructure& oracle_clusters,
                            const Vector& oracle_signs);

/// Dispatch on config.solver for the non-oracle solvers.
SolveResult solve(const Problem& problem, const SolverConfig& config,
                  const Vector& beta0);

}  // namespace slope
