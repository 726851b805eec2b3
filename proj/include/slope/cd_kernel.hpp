#pragma once

#include <optional>
#include <span>

#include "slope/state.hpp"

namespace slope {

/// H(z): the penalty as a function of cluster k's common magnitude z, all
/// other coefficients fixed. Piecewise affine with breakpoints at 0 and the
/// other cluster magnitudes.
double partial_sorted_l1(double z, Index k, const ClusterStructure& cs,
                         const LambdaSequence& lambda);

/// S(x): sum of the lambda entries occupying the rank positions of the
/// cluster containing magnitude x when cluster k is placed at x.
double partial_lambda_sum(double x, Index k, const ClusterStructure& cs,
                          const LambdaSequence& lambda);

struct PartialDerivativeQuery {
  double z = 0.0;
  int direction = 1;  // +1 or -1
  Index k = 0;
  const ClusterStructure* clusters = nullptr;
  const LambdaSequence* lambda = nullptr;
};

/// One-sided derivative H'(z; direction). Exact on and off breakpoints.
double directional_derivative(const PartialDerivativeQuery& query);

/// Inputs of the cluster thresholding operator. `other_values`/`other_sizes`
/// describe c^{\k} sorted strictly decreasing (a trailing zero entry is the
/// zero cluster); `lambda_prefix` holds prefix sums of lambda (size p + 1);
/// `start_slot` is cluster k's current position in that order (the number of
/// other clusters with larger magnitude), where the directional search
/// begins.
struct ThresholdQuery {
  double gamma = 0.0;
  double omega = 0.0;  // ||x_tilde||^2, must be > 0
  std::span<const double> other_values;
  std::span<const Index> other_sizes;
  Index k_size = 0;
  std::span<const double> lambda_prefix;
  Index start_slot = 0;
};

struct ThresholdResult {
  double z = 0.0;  // signed new magnitude
  // Index into other_values when the result lands exactly on an existing
  // magnitude (or on the zero cluster); empty in the affine regions.
  std::optional<Index> landed_on;
};

/// argmin_z of the one-dimensional cluster problem
///   0.5 * omega * z^2 - gamma * z + H(z) (+ const).
/// Searches outward from `start_slot` instead of evaluating every case; the
/// flat regions return 0 or a bit-equal copy of an existing magnitude, which
/// is what makes exact cluster merges possible.
ThresholdResult slope_threshold(const ThresholdQuery& query);

/// Convenience overload building the query from a cluster structure.
ThresholdResult slope_threshold(double gamma, double omega,
                                const ClusterStructure& cs, Index k,
                                const LambdaSequence& lambda);

/// One full coordinate-descent pass over the clusters: for each nonzero
/// cluster, form the signed column sum, threshold its magnitude, update the
/// residual incrementally and restructure. Clusters may merge but never
/// split. The objective never increases.
void cd_epoch(SolverState& state, const Problem& problem);

}  // namespace slope
