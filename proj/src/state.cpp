#include "slope/state.hpp"

namespace slope {

SolverState make_state(const Problem& problem, const Vector& beta0) {
  if (beta0.size() != problem.n_features()) {
    throw ContractViolation("initial point length mismatch");
  }
  SolverState state;
  state.beta = beta0;
  state.residual = problem.X.multiply(beta0) - problem.y;
  state.clusters = build_clusters(beta0);
  state.epoch = 0;
  return state;
}

}  // namespace slope
