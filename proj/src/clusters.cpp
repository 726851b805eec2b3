#include "slope/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slope {

Permutation sort_permutation(const Vector& beta) {
  const Index p = beta.size();
  Permutation perm;
  perm.order.resize(p);
  for (Index i = 0; i < p; ++i) perm.order[i] = i;
  std::sort(perm.order.begin(), perm.order.end(), [&](Index a, Index b) {
    const double va = std::abs(beta[a]);
    const double vb = std::abs(beta[b]);
    if (va != vb) return va > vb;
    return a < b;
  });
  perm.inverse.resize(p);
  for (Index i = 0; i < p; ++i) perm.inverse[perm.order[i]] = i;
  return perm;
}

ClusterStructure build_clusters(const Vector& beta) {
  const Index p = beta.size();
  ClusterStructure cs;
  cs.cluster_of.assign(p, 0);
  if (p == 0) return cs;

  const Permutation perm = sort_permutation(beta);
  Index start = 0;
  while (start < p) {
    const double value = std::abs(beta[perm.order[start]]);
    Index end = start;
    while (end < p && std::abs(beta[perm.order[end]]) == value) ++end;
    std::vector<Index> group(perm.order.begin() + start,
                             perm.order.begin() + end);
    // stable tie-break by index keeps members ascending
    const Index id = cs.size();
    for (Index j : group) cs.cluster_of[j] = id;
    cs.values.push_back(value);
    cs.members.push_back(std::move(group));
    start = end;
  }
  return cs;
}

double epsilon_gap(const ClusterStructure& cs, Index k) {
  if (k < 0 || k >= cs.size()) {
    throw ContractViolation("cluster id out of range");
  }
  double bound = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::quiet_NaN();
  double smallest_nonzero = 0.0;
  for (Index i = 0; i < cs.size(); ++i) {
    if (i == k) continue;
    const double c = cs.values[i];
    if (!std::isnan(prev)) bound = std::min(bound, prev - c);
    prev = c;
    if (c > 0.0) smallest_nonzero = c;  // values are decreasing
  }
  if (smallest_nonzero > 0.0) bound = std::min(bound, smallest_nonzero);
  if (!std::isfinite(bound)) return 1.0;  // c^{\k} empty or all-zero
  return bound / 2.0;
}

namespace {

void write_beta_from_value(Vector& beta, const std::vector<Index>& indices,
                           double value) {
  for (Index j : indices) {
    beta[j] = value == 0.0 ? 0.0 : std::copysign(value, beta[j]);
  }
}

void reassign_range(ClusterStructure& cs, Index lo, Index hi) {
  for (Index i = lo; i <= hi; ++i) {
    for (Index j : cs.members[i]) cs.cluster_of[j] = i;
  }
}

}  // namespace

void update_cluster(ClusterStructure& cs, Vector& beta, Index k,
                    double value) {
  if (k < 0 || k >= cs.size()) {
    throw ContractViolation("cluster id out of range");
  }
  if (!(value >= 0.0)) {
    throw ContractViolation("cluster magnitude must be non-negative");
  }

  write_beta_from_value(beta, cs.members[k], value);
  if (value == cs.values[k]) return;

  std::vector<Index> moved = std::move(cs.members[k]);
  cs.values.erase(cs.values.begin() + k);
  cs.members.erase(cs.members.begin() + k);

  // Position in the shrunk list where `value` belongs (values descending).
  const auto it = std::lower_bound(cs.values.begin(), cs.values.end(), value,
                                   [](double a, double b) { return a > b; });
  Index pos = static_cast<Index>(it - cs.values.begin());

  if (pos < cs.size() && cs.values[pos] == value) {
    // exact merge; every id above k shifted down, so fix the whole tail
    std::vector<Index> merged;
    merged.reserve(cs.members[pos].size() + moved.size());
    std::merge(cs.members[pos].begin(), cs.members[pos].end(), moved.begin(),
               moved.end(), std::back_inserter(merged));
    cs.members[pos] = std::move(merged);
    reassign_range(cs, std::min(pos, k), cs.size() - 1);
  } else {
    cs.values.insert(cs.values.begin() + pos, value);
    cs.members.insert(cs.members.begin() + pos, std::move(moved));
    reassign_range(cs, std::min(pos, k), std::max(pos, k));
  }
}

}  // namespace slope
