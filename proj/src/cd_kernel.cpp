#include "slope/cd_kernel.hpp"

#include <algorithm>
#include <cmath>

namespace slope {

namespace {

inline double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

double partial_sorted_l1(double z, Index k, const ClusterStructure& cs,
                         const LambdaSequence& lambda) {
  if (k < 0 || k >= cs.size()) {
    throw ContractViolation("cluster id out of range");
  }
  // Magnitude groups of beta(z): the other clusters plus cluster k at |z|.
  // Walk them in decreasing order and charge each group its lambda window;
  // groups tied in magnitude occupy adjacent windows, so any order among
  // them yields the same sum.
  std::vector<std::pair<double, Index>> groups;
  groups.reserve(cs.size());
  for (Index i = 0; i < cs.size(); ++i) {
    if (i == k) continue;
    groups.emplace_back(cs.values[i], static_cast<Index>(cs.members[i].size()));
  }
  groups.emplace_back(std::abs(z), static_cast<Index>(cs.members[k].size()));
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  double acc = 0.0;
  Index rank = 0;
  for (const auto& [value, count] : groups) {
    if (value != 0.0) {
      double window = 0.0;
      for (Index t = rank; t < rank + count; ++t) window += lambda[t];
      acc += value * window;
    }
    rank += count;
  }
  return acc;
}

double partial_lambda_sum(double x, Index k, const ClusterStructure& cs,
                          const LambdaSequence& lambda) {
  if (k < 0 || k >= cs.size()) {
    throw ContractViolation("cluster id out of range");
  }
  Index above = 0;
  Index width = static_cast<Index>(cs.members[k].size());
  for (Index i = 0; i < cs.size(); ++i) {
    if (i == k) continue;
    if (cs.values[i] > x) {
      above += static_cast<Index>(cs.members[i].size());
    } else if (cs.values[i] == x) {
      width += static_cast<Index>(cs.members[i].size());
    }
  }
  double acc = 0.0;
  for (Index t = above; t < above + width; ++t) acc += lambda[t];
  return acc;
}

double directional_derivative(const PartialDerivativeQuery& query) {
  if (query.direction != 1 && query.direction != -1) {
    throw ContractViolation("direction must be +1 or -1");
  }
  const ClusterStructure& cs = *query.clusters;
  const LambdaSequence& lambda = *query.lambda;
  const Index k = query.k;
  const double z = query.z;
  const double delta = static_cast<double>(query.direction);

  const double eps = epsilon_gap(cs, k);
  if (z == 0.0) {
    // both one-sided derivatives coincide at zero
    return partial_lambda_sum(eps, k, cs, lambda);
  }
  bool on_breakpoint = false;
  for (Index i = 0; i < cs.size() && !on_breakpoint; ++i) {
    on_breakpoint = i != k && cs.values[i] != 0.0 && cs.values[i] == std::abs(z);
  }
  if (on_breakpoint) {
    const double shifted = std::abs(z + eps * delta);
    return sign_of(z) * delta * partial_lambda_sum(shifted, k, cs, lambda);
  }
  return sign_of(z) * delta * partial_lambda_sum(std::abs(z), k, cs, lambda);
}

ThresholdResult slope_threshold(const ThresholdQuery& q) {
  if (!(q.omega > 0.0)) {
    throw ContractViolation("threshold curvature must be positive");
  }
  const double abs_gamma = std::abs(q.gamma);
  const double sgn = sign_of(q.gamma);

  // Nonzero entries of c^{\k}; a trailing zero entry is the zero cluster.
  Index qn = static_cast<Index>(q.other_values.size());
  const bool has_zero_entry = qn > 0 && q.other_values[qn - 1] == 0.0;
  if (has_zero_entry) --qn;

  // above[t]: count of coefficients in other clusters above slot t.
  // Slot t is the open magnitude interval (other_values[t], other_values[t-1]).
  std::vector<Index> above(qn + 1);
  above[0] = 0;
  for (Index t = 0; t < qn; ++t) above[t + 1] = above[t] + q.other_sizes[t];
  const auto window = [&](Index t) {
    return q.lambda_prefix[above[t] + q.k_size] - q.lambda_prefix[above[t]];
  };

  Index t = std::clamp(q.start_slot, Index{0}, qn);
  for (;;) {
    if (t > 0) {
      // gamma at/above the slot top lands on the breakpoint above or beyond
      const double slot_top = q.omega * q.other_values[t - 1] + window(t);
      if (abs_gamma >= slot_top) {
        const double bp_top = q.omega * q.other_values[t - 1] + window(t - 1);
        if (abs_gamma <= bp_top) {
          return {sgn * q.other_values[t - 1], t - 1};
        }
        --t;
        continue;
      }
    }
    if (t == qn) {
      if (abs_gamma <= window(qn)) {
        // zero region; merge target is the zero cluster when it exists
        if (has_zero_entry) return {0.0, qn};
        return {0.0, std::nullopt};
      }
    } else {
      const double slot_bottom = q.omega * q.other_values[t] + window(t);
      if (abs_gamma <= slot_bottom) {
        const double bp_bottom = q.omega * q.other_values[t] + window(t + 1);
        if (abs_gamma >= bp_bottom) {
          return {sgn * q.other_values[t], t};
        }
        ++t;
        continue;
      }
    }
    // interior of slot t
    return {sgn * (abs_gamma - window(t)) / q.omega, std::nullopt};
  }
}

ThresholdResult slope_threshold(double gamma, double omega,
                                const ClusterStructure& cs, Index k,
                                const LambdaSequence& lambda) {
  if (k < 0 || k >= cs.size()) {
    throw ContractViolation("cluster id out of range");
  }
  std::vector<double> other_values;
  std::vector<Index> other_sizes;
  other_values.reserve(cs.size());
  other_sizes.reserve(cs.size());
  for (Index i = 0; i < cs.size(); ++i) {
    if (i == k) continue;
    other_values.push_back(cs.values[i]);
    other_sizes.push_back(static_cast<Index>(cs.members[i].size()));
  }
  std::vector<double> prefix(lambda.size() + 1, 0.0);
  for (Index j = 0; j < lambda.size(); ++j) {
    prefix[j + 1] = prefix[j] + lambda[j];
  }
  ThresholdQuery q;
  q.gamma = gamma;
  q.omega = omega;
  q.other_values = other_values;
  q.other_sizes = other_sizes;
  q.k_size = static_cast<Index>(cs.members[k].size());
  q.lambda_prefix = prefix;
  q.start_slot = k;
  ThresholdResult res = slope_threshold(q);
  if (res.landed_on && *res.landed_on >= k) {
    *res.landed_on += 1;  // map back to a cluster id in cs
  }
  return res;
}

void cd_epoch(SolverState& state, const Problem& problem) {
  ClusterStructure& cs = state.clusters;
  Vector& beta = state.beta;
  Vector& residual = state.residual;
  const LambdaSequence& lambda = problem.lambda;
  const Index n = problem.n_samples();

  std::vector<double> prefix(lambda.size() + 1, 0.0);
  for (Index j = 0; j < lambda.size(); ++j) {
    prefix[j + 1] = prefix[j] + lambda[j];
  }

  Vector x_tilde(n);
  std::vector<double> other_values;
  std::vector<Index> other_sizes;

  Index k = 0;
  while (k < cs.size()) {
    const double c_k = cs.values[k];
    if (c_k == 0.0) {
      // zero clusters re-enter only through PGD steps
      ++k;
      continue;
    }
    x_tilde.setZero();
    for (Index j : cs.members[k]) {
      problem.X.add_column(j, sign_of(beta[j]), x_tilde);
    }
    const double omega = x_tilde.squaredNorm();

    double z = 0.0;
    if (omega > 0.0) {
      const double gamma = c_k * omega - x_tilde.dot(residual);
      other_values.clear();
      other_sizes.clear();
      for (Index i = 0; i < cs.size(); ++i) {
        if (i == k) continue;
        other_values.push_back(cs.values[i]);
        other_sizes.push_back(static_cast<Index>(cs.members[i].size()));
      }
      ThresholdQuery q;
      q.gamma = gamma;
      q.omega = omega;
      q.other_values = other_values;
      q.other_sizes = other_sizes;
      q.k_size = static_cast<Index>(cs.members[k].size());
      q.lambda_prefix = prefix;
      q.start_slot = k;
      z = slope_threshold(q).z;
    }

    if (z != c_k) {
      residual += (z - c_k) * x_tilde;
      if (z < 0.0) {
        for (Index j : cs.members[k]) beta[j] = -beta[j];
      }
      update_cluster(cs, beta, k, std::abs(z));
    }
    ++k;
  }
}

}  // namespace slope
