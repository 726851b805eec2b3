#pragma once

#include "slope/clusters.hpp"
#include "slope/types.hpp"

namespace slope {

/// Mutable iterate of a solve. The residual is kept as X beta - y (the sign
/// used by the gradient X^T(X beta - y)); the dual construction negates it
/// where needed. Confined to one solve call.
struct SolverState {
  Vector beta;
  Vector residual;  // X beta - y
  ClusterStructure clusters;
  long epoch = 0;
};

SolverState make_state(const Problem& problem, const Vector& beta0);

}  // namespace slope
