#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "slope/types.hpp"

namespace slope {

/// Standard normal quantile. Rational approximation refined to full double
/// precision with Halley steps on the erfc-based CDF.
double probit(double u);

/// Benjamini-Hochberg weights: lambda_j = probit(1 - q * j / (2p)),
/// j = 1..p. Strictly decreasing and positive for q in (0, 1).
LambdaSequence bh_lambda(Index p, double q);

/// Smallest scaling t of lambda for which the solution is exactly zero:
/// t = dual_ball_scaling(X^T y, lambda).alpha. Solving at t * lambda yields 0;
/// any smaller positive scaling yields at least one nonzero coefficient.
double lambda_max_scale(const DesignMatrix& X, const Vector& y,
                        const LambdaSequence& lambda);

struct ScenarioSpec {
  Index n = 0;
  Index p = 0;
  Index k = 0;             // number of true nonzeros
  double density = 1.0;    // fraction of nonzero design entries
  double rho_corr = 0.6;   // AR(1) correlation base (dense path)
  double snr = 3.0;        // ||X beta|| / ||eps||
  std::uint64_t seed = 0;
};

struct SimulatedProblem {
  DesignMatrix X;
  Vector y;
  Vector beta_true;
};

/// Dense path: AR(1) columns with correlation rho^|j-j'|, shifted to
/// population mean one, unit variance. Sparse path (density < 1): iid
/// standard-normal entries kept with probability `density` (no correlation
/// structure). The noise is rescaled so ||X beta|| / ||eps|| equals snr
/// exactly. Reproducible: same seed, bit-identical output.
SimulatedProblem simulate(const ScenarioSpec& spec);

struct PreprocessResult {
  DesignMatrix X;
  std::vector<Index> dropped;  // original column indices removed
  Vector centers;              // aligned with kept columns (zeros in sparse mode)
  Vector scales;               // aligned with kept columns
};

/// Drops columns with fewer than three nonzero values, then centers and
/// scales by mean/std (dense mode, population std) or scales by max |x|
/// (sparse mode, keeps sparsity). Columns with zero scale are dropped too.
PreprocessResult preprocess(const DesignMatrix& X, bool dense_mode);

/// Reads "label idx:val idx:val ..." lines with 1-based strictly increasing
/// indices; '#' starts a comment. p is inferred as the max index unless
/// n_features > 0 overrides it.
std::pair<DesignMatrix, Vector> read_libsvm(const std::string& path,
                                            Index n_features = 0);

/// Binary cache of a simulated problem. Layout (little-endian):
/// magic "SLSIM1", u8 storage kind (0 dense, 1 sparse), u64 n, u64 p, the
/// matrix payload (dense: n*p doubles row-major; sparse: u64 nnz, p+1 u64
/// column pointers, nnz u64 row indices, nnz doubles), then y (n doubles)
/// and beta_true (p doubles).
void write_simulated(const std::string& path, const SimulatedProblem& sim);
SimulatedProblem read_simulated(const std::string& path);

}  // namespace slope
