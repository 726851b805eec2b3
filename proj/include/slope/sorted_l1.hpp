#pragma once

#include "slope/types.hpp"

namespace slope {

/// J(beta) = sum_j lambda_j |beta|_(j) with |beta|_(1) >= ... >= |beta|_(p).
double sorted_l1_norm(const Vector& beta, const LambdaSequence& lambda);

/// argmin_x 0.5 ||x - v||^2 + J(x). Stack-based pool-adjacent-violators on
/// |v| sorted decreasing, then sign and permutation restoration. Exact in
/// O(p log p).
Vector prox_sorted_l1(const Vector& v, const LambdaSequence& lambda);

/// Factor by which g must be shrunk to enter the dual unit ball of J:
/// alpha = max_k cumsum(|g| sorted)_k / cumsum(lambda)_k. alpha <= 1 iff
/// J*(g) <= 1.
struct DualScaling {
  double alpha = 0.0;
};
DualScaling dual_ball_scaling(const Vector& g, const LambdaSequence& lambda);

/// P(beta) - D(theta) with theta = (y - X beta) / max(1, alpha). Non-negative
/// up to round-off for every beta; zero at the optimum.
double duality_gap(const Problem& problem, const Vector& beta);

/// Same, reusing residual = X beta - y maintained by a solver.
double duality_gap(const Problem& problem, const Vector& beta,
                   const Vector& residual);

/// True iff g is in the subdifferential of J at beta, up to tol. Lambda
/// entries are matched to each cluster by its rank window in the sorted-|beta|
/// order; per cluster the cumulative sorted |g| may not exceed the cumulative
/// window, and nonzero clusters additionally need total equality and matching
/// signs.
bool check_subdifferential(const Vector& beta, const Vector& g,
                           const LambdaSequence& lambda, double tol);

}  // namespace slope
