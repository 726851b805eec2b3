#pragma once

#include "slope/types.hpp"

namespace slope {

/// Partition of coefficient indices by |beta| value. Cluster magnitudes are
/// strictly decreasing and are the single source of truth: beta entries of a
/// cluster are always written from the cluster value, so membership tests use
/// exact float equality and never need a tolerance.
struct ClusterStructure {
  std::vector<double> values;                // c_1 > c_2 > ... > c_m >= 0
  std::vector<std::vector<Index>> members;   // index sets, ascending inside
  std::vector<Index> cluster_of;             // coefficient -> cluster id

  Index size() const { return static_cast<Index>(values.size()); }
  Index coef_count() const { return static_cast<Index>(cluster_of.size()); }
  bool has_zero_cluster() const {
    return !values.empty() && values.back() == 0.0;
  }
};

/// Group coefficients by |beta_j|, zero cluster last when present.
ClusterStructure build_clusters(const Vector& beta);

/// order sorts |beta| non-increasingly (ties by original index);
/// inverse[order[i]] == i.
struct Permutation {
  std::vector<Index> order;
  std::vector<Index> inverse;
};
Permutation sort_permutation(const Vector& beta);

/// Move cluster k to magnitude `value` (value >= 0), merging with an existing
/// cluster on exact equality (the thresholding operator returns bit-equal
/// magnitudes in its constant regions). Beta entries of the cluster are
/// rewritten to +/- value with their current signs.
void update_cluster(ClusterStructure& cs, Vector& beta, Index k, double value);

/// A valid slack for the magnitudes c^{\k}: strictly smaller than every
/// pairwise gap |c_i - c_j| (i, j != k) and than the smallest nonzero c_i
/// (i != k). Returns 1.0 when no constraint binds.
double epsilon_gap(const ClusterStructure& cs, Index k);

}  // namespace slope
