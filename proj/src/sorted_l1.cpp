#include "slope/sorted_l1.hpp"

#include <algorithm>
#include <cmath>

#include "slope/clusters.hpp"

namespace slope {

double sorted_l1_norm(const Vector& beta, const LambdaSequence& lambda) {
  if (beta.size() != lambda.size()) {
    throw ContractViolation("sorted_l1_norm length mismatch");
  }
  std::vector<double> mags(beta.size());
  for (Index j = 0; j < beta.size(); ++j) mags[j] = std::abs(beta[j]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double acc = 0.0;
  for (Index j = 0; j < beta.size(); ++j) acc += lambda[j] * mags[j];
  return acc;
}

double primal_objective(const Problem& problem, const Vector& beta) {
  if (beta.size() != problem.n_features()) {
    throw ContractViolation("primal_objective length mismatch");
  }
  const Vector residual = problem.X.multiply(beta) - problem.y;
  return 0.5 * residual.squaredNorm() + sorted_l1_norm(beta, problem.lambda);
}

Vector prox_sorted_l1(const Vector& v, const LambdaSequence& lambda) {
  const Index p = v.size();
  if (p != lambda.size()) {
    throw ContractViolation("prox_sorted_l1 length mismatch");
  }
  Vector out = Vector::Zero(p);
  if (p == 0) return out;

  const Permutation perm = sort_permutation(v);

  // Pool adjacent violators on |v| sorted decreasing minus lambda: maintain a
  // stack of blocks whose running averages must stay strictly decreasing.
  std::vector<double> block_sum(p), block_avg(p);
  std::vector<Index> block_start(p), block_end(p);
  Index top = 0;
  for (Index i = 0; i < p; ++i) {
    block_start[top] = i;
    block_end[top] = i;
    block_sum[top] = std::abs(v[perm.order[i]]) - lambda[i];
    block_avg[top] = block_sum[top];
    while (top > 0 && block_avg[top - 1] <= block_avg[top]) {
      --top;
      block_end[top] = i;
      block_sum[top] += block_sum[top + 1];
      block_avg[top] =
          block_sum[top] / static_cast<double>(i - block_start[top] + 1);
    }
    ++top;
  }
  for (Index b = 0; b < top; ++b) {
    const double value = std::max(block_avg[b], 0.0);
    for (Index i = block_start[b]; i <= block_end[b]; ++i) {
      const Index j = perm.order[i];
      out[j] = value == 0.0 ? 0.0 : std::copysign(value, v[j]);
    }
  }
  return out;
}

DualScaling dual_ball_scaling(const Vector& g, const LambdaSequence& lambda) {
  if (g.size() != lambda.size()) {
    throw ContractViolation("dual_ball_scaling length mismatch");
  }
  const Index p = g.size();
  if (lambda.all_zero()) {
    if (g.lpNorm<Eigen::Infinity>() > 0.0) {
      throw DataError("penalty degenerate: all-zero lambda with nonzero dual");
    }
    return DualScaling{0.0};
  }
  std::vector<double> mags(p);
  for (Index j = 0; j < p; ++j) mags[j] = std::abs(g[j]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cum_g = 0.0;
  double cum_lambda = 0.0;
  double alpha = 0.0;
  for (Index j = 0; j < p; ++j) {
    cum_g += mags[j];
    cum_lambda += lambda[j];
    // lambda non-increasing: lambda[0] > 0 makes every prefix positive
    alpha = std::max(alpha, cum_g / cum_lambda);
  }
  return DualScaling{alpha};
}

double duality_gap(const Problem& problem, const Vector& beta,
                   const Vector& residual) {
  if (beta.size() != problem.n_features() ||
      residual.size() != problem.n_samples()) {
    throw ContractViolation("duality_gap dimension mismatch");
  }
  const Vector g = problem.X.multiply_transpose(residual);  // -X^T r
  double alpha = 0.0;
  if (problem.lambda.all_zero()) {
    alpha = g.lpNorm<Eigen::Infinity>() > 0.0
                ? std::numeric_limits<double>::infinity()
                : 0.0;
  } else {
    alpha = dual_ball_scaling(g, problem.lambda).alpha;
  }
  const double shrink = std::max(1.0, alpha);
  // P(beta) - D(r / shrink) rearranged to avoid the ||y||^2 cancellation:
  //   J(beta) - beta^T X^T r / shrink + 0.5 (1 - 1/shrink)^2 ||r||^2
  // with r = y - X beta = -residual.
  const double slack = 1.0 - 1.0 / shrink;
  double gap = sorted_l1_norm(beta, problem.lambda);
  if (shrink == std::numeric_limits<double>::infinity()) {
    gap += 0.5 * residual.squaredNorm();
  } else {
    gap += beta.dot(g) / shrink + 0.5 * slack * slack * residual.squaredNorm();
  }
  return gap;
}

double duality_gap(const Problem& problem, const Vector& beta) {
  const Vector residual = problem.X.multiply(beta) - problem.y;
  return duality_gap(problem, beta, residual);
}

bool check_subdifferential(const Vector& beta, const Vector& g,
                           const LambdaSequence& lambda, double tol) {
  if (beta.size() != g.size() || beta.size() != lambda.size()) {
    throw ContractViolation("check_subdifferential length mismatch");
  }
  const ClusterStructure cs = build_clusters(beta);
  Index rank_start = 0;
  for (Index i = 0; i < cs.size(); ++i) {
    const auto& idx = cs.members[i];
    const Index sz = static_cast<Index>(idx.size());
    std::vector<double> gmag(sz);
    for (Index t = 0; t < sz; ++t) gmag[t] = std::abs(g[idx[t]]);
    std::sort(gmag.begin(), gmag.end(), std::greater<>());

    double cum_g = 0.0;
    double cum_lambda = 0.0;
    for (Index t = 0; t < sz; ++t) {
      cum_g += gmag[t];
      cum_lambda += lambda[rank_start + t];
      if (cum_g - cum_lambda > tol) return false;
    }
    if (cs.values[i] > 0.0) {
      if (std::abs(cum_g - cum_lambda) > tol) return false;
      for (Index j : idx) {
        const bool sign_match = (g[j] > 0.0) == (beta[j] > 0.0);
        if (!sign_match && std::abs(g[j]) > tol) return false;
      }
    }
    rank_start += sz;
  }
  return true;
}

}  // namespace slope
