#include "slope/solvers.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/QR>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

#include "slope/cd_kernel.hpp"
#include "slope/rng.hpp"
#include "slope/sorted_l1.hpp"

namespace slope {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

/// Shared checkpointing and budget logic. Tracks the best iterate by primal
/// value so budget-exhausted runs can still hand back their best point.
class Monitor {
 public:
  Monitor(const Problem& problem, const SolverConfig& config, SolverKind kind)
      : problem_(problem), config_(config) {
    trace_.solver_name = solver_kind_name(kind);
    trace_.config_digest = config_digest(config);
    checkpoint_every_ = std::max<long>(1, config.checkpoint_every);
  }

  void start_clock() { t0_ = Clock::now(); }

  double elapsed() const { return seconds_since(t0_); }

  bool due(long epoch) const { return epoch % checkpoint_every_ == 0; }

  /// Records a checkpoint; returns true when the gap meets the tolerance.
  bool checkpoint(long epoch, const Vector& beta, const Vector& residual) {
    const double primal = 0.5 * residual.squaredNorm() +
                          sorted_l1_norm(beta, problem_.lambda);
    const double gap = duality_gap(problem_, beta, residual);
    return record_raw(epoch, primal, gap, beta);
  }

  /// Same bookkeeping for solvers that compute primal and gap themselves.
  bool record_raw(long epoch, double primal, double gap, const Vector& beta) {
    trace_.records.push_back({elapsed(), epoch, primal, gap});
    if (primal < best_primal_) {
      best_primal_ = primal;
      best_beta_ = beta;
    }
    if (gap <= config_.tol) {
      trace_.converged = true;
      return true;
    }
    return false;
  }

  bool time_exhausted() const { return elapsed() >= config_.max_time; }

  void add_note(const std::string& note) {
    if (!trace_.note.empty()) trace_.note += "; ";
    trace_.note += note;
  }

  SolveResult finish(Vector current_beta) {
    if (!trace_.converged) {
      if (trace_.note.empty()) add_note("not converged: budget exhausted");
      if (best_beta_.size() > 0) current_beta = best_beta_;
    }
    return SolveResult{std::move(current_beta), std::move(trace_)};
  }

  const ConvergenceTrace& trace() const { return trace_; }

 private:
  const Problem& problem_;
  const SolverConfig& config_;
  ConvergenceTrace trace_;
  Clock::time_point t0_ = Clock::now();
  long checkpoint_every_ = 1;
  double best_primal_ = std::numeric_limits<double>::infinity();
  Vector best_beta_;
};

/// Step curvature for the gradient solvers: the spectral norm estimate is
/// inflated by 2% so the descent lemma survives estimation error.
double step_curvature(const Problem& problem, const SolverConfig& config) {
  const double est = spectral_norm_sq(problem.X, 1e-4, config.seed);
  return std::max(est, std::numeric_limits<double>::min()) * 1.02;
}

struct PgdStep {
  PgdStep(const Problem& problem, double curvature)
      : inv_curvature(1.0 / curvature),
        lambda_step(problem.lambda.scaled(1.0 / curvature)) {}

  void operator()(const Problem& problem, Vector& beta,
                  Vector& residual) const {
    const Vector grad = problem.X.multiply_transpose(residual);
    const Vector candidate = beta - inv_curvature * grad;
    beta = prox_sorted_l1(candidate, lambda_step);
    residual = problem.X.multiply(beta) - problem.y;
  }

  double inv_curvature;
  LambdaSequence lambda_step;
};

void require_kind(const SolverConfig& config, SolverKind kind) {
  if (config.solver != kind) {
    throw ContractViolation("solver config kind does not match the call");
  }
  if (!(config.tol > 0.0)) {
    throw ContractViolation("stopping tolerance must be positive");
  }
}

}  // namespace

const char* solver_kind_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Hybrid: return "hybrid";
    case SolverKind::Pgd: return "pgd";
    case SolverKind::Fista: return "fista";
    case SolverKind::AndersonPgd: return "anderson_pgd";
    case SolverKind::Admm: return "admm";
    case SolverKind::OracleCd: return "oracle_cd";
  }
  return "unknown";
}

std::string config_digest(const SolverConfig& config) {
  std::string out = solver_kind_name(config.solver);
  out += "(v=" + std::to_string(config.pgd_frequency);
  out += ",rho=" + format_double(config.rho);
  out += ",memory=" + std::to_string(config.anderson_memory);
  out += ",tol=" + format_double(config.tol);
  out += ",max_epochs=" + std::to_string(config.max_epochs);
  out += ",max_time=" + format_double(config.max_time);
  out += ",checkpoint=" + std::to_string(std::max<long>(1, config.checkpoint_every));
  out += ",seed=" + std::to_string(config.seed);
  out += ")";
  return out;
}

double spectral_norm_sq(const DesignMatrix& X, double tol,
                        std::uint64_t seed) {
  const Index p = X.cols();
  if (X.rows() == 0 || p == 0) return 0.0;
  Rng rng(seed);
  Vector u = rng.normal_vector(p);
  double norm_u = u.norm();
  if (norm_u == 0.0) {
    u.setZero();
    u[0] = 1.0;
    norm_u = 1.0;
  }
  u /= norm_u;

  double estimate = 0.0;
  double previous = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const Vector v = X.multiply(u);
    estimate = v.squaredNorm();
    if (estimate == 0.0) return 0.0;
    const Vector w = X.multiply_transpose(v);
    const double norm_w = w.norm();
    if (norm_w == 0.0) return estimate;
    u = w / norm_w;
    if (it > 0 && std::abs(estimate - previous) <= tol * estimate) break;
    previous = estimate;
  }
  return estimate;
}

SolveResult hybrid_solve(const Problem& problem, const SolverConfig& config,
                         const Vector& beta0) {
  require_kind(config, SolverKind::Hybrid);
  Monitor mon(problem, config, SolverKind::Hybrid);
  if (!config.exclude_lipschitz_time) mon.start_clock();
  const PgdStep pgd(problem, step_curvature(problem, config));
  if (config.exclude_lipschitz_time) mon.start_clock();

  SolverState state = make_state(problem, beta0);
  if (mon.checkpoint(0, state.beta, state.residual)) {
    return mon.finish(state.beta);
  }
  const int v = std::max(1, config.pgd_frequency);
  for (long epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if ((epoch - 1) % v == 0) {
      pgd(problem, state.beta, state.residual);
      state.clusters = build_clusters(state.beta);
    } else {
      cd_epoch(state, problem);
    }
    state.epoch = epoch;
    const bool due = mon.due(epoch) || epoch == config.max_epochs;
    if (due && mon.checkpoint(epoch, state.beta, state.residual)) break;
    if (mon.time_exhausted()) {
      if (!due) mon.checkpoint(epoch, state.beta, state.residual);
      mon.add_note("not converged: time budget exhausted");
      break;
    }
  }
  return mon.finish(state.beta);
}

SolveResult pgd_solve(const Problem& problem, const SolverConfig& config,
                      const Vector& beta0) {
  require_kind(config, SolverKind::Pgd);
  Monitor mon(problem, config, SolverKind::Pgd);
  if (!config.exclude_lipschitz_time) mon.start_clock();
  const PgdStep pgd(problem, step_curvature(problem, config));
  if (config.exclude_lipschitz_time) mon.start_clock();

  Vector beta = beta0;
  Vector residual = problem.X.multiply(beta) - problem.y;
  if (mon.checkpoint(0, beta, residual)) return mon.finish(beta);
  for (long epoch = 1; epoch <= config.max_epochs; ++epoch) {
    pgd(problem, beta, residual);
    const bool due = mon.due(epoch) || epoch == config.max_epochs;
    if (due && mon.checkpoint(epoch, beta, residual)) break;
    if (mon.time_exhausted()) {
      if (!due) mon.checkpoint(epoch, beta, residual);
      mon.add_note("not converged: time budget exhausted");
      break;
    }
  }
  return mon.finish(beta);
}

SolveResult fista_solve(const Problem& problem, const SolverConfig& config,
                        const Vector& beta0) {
  require_kind(config, SolverKind::Fista);
  Monitor mon(problem, config, SolverKind::Fista);
  if (!config.exclude_lipschitz_time) mon.start_clock();
  const double curvature = step_curvature(problem, config);
  const double inv_curvature = 1.0 / curvature;
  const LambdaSequence lambda_step = problem.lambda.scaled(inv_curvature);
  if (config.exclude_lipschitz_time) mon.start_clock();

  Vector x = beta0;
  Vector x_product = problem.X.multiply(x);  // X x, kept alongside x
  Vector residual = x_product - problem.y;
  if (mon.checkpoint(0, x, residual)) return mon.finish(x);

  Vector momentum = x;
  Vector momentum_product = x_product;
  double t_k = 1.0;
  for (long epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const Vector grad =
        problem.X.multiply_transpose(momentum_product - problem.y);
    const Vector candidate = momentum - inv_curvature * grad;
    Vector x_next = prox_sorted_l1(candidate, lambda_step);
    Vector x_next_product = problem.X.multiply(x_next);

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k));
    const double coef = (t_k - 1.0) / t_next;
    momentum = x_next + coef * (x_next - x);
    momentum_product = x_next_product + coef * (x_next_product - x_product);
    x = std::move(x_next);
    x_product = std::move(x_next_product);
    t_k = t_next;

    residual = x_product - problem.y;
    const bool due = mon.due(epoch) || epoch == config.max_epochs;
    if (due && mon.checkpoint(epoch, x, residual)) break;
    if (mon.time_exhausted()) {
      if (!due) mon.checkpoint(epoch, x, residual);
      mon.add_note("not converged: time budget exhausted");
      break;
    }
  }
  return mon.finish(x);
}

SolveResult anderson_pgd_solve(const Problem& problem,
                               const SolverConfig& config,
                               const Vector& beta0) {
  require_kind(config, SolverKind::AndersonPgd);
  Monitor mon(problem, config, SolverKind::AndersonPgd);
  if (!config.exclude_lipschitz_time) mon.start_clock();
  const PgdStep pgd(problem, step_curvature(problem, config));
  if (config.exclude_lipschitz_time) mon.start_clock();

  const Index p = problem.n_features();
  const int memory = std::max(1, config.anderson_memory);

  Vector x = beta0;
  Vector residual = problem.X.multiply(x) - problem.y;
  if (mon.checkpoint(0, x, residual)) return mon.finish(x);

  std::deque<Vector> fixed_point_values;  // F(x_i)
  std::deque<Vector> residual_maps;       // F(x_i) - x_i
  bool restarted_note = false;

  for (long epoch = 1; epoch <= config.max_epochs; ++epoch) {
    // plain PGD point from the current iterate
    const Vector grad = problem.X.multiply_transpose(residual);
    const Vector candidate = x - pgd.inv_curvature * grad;
    Vector fx = prox_sorted_l1(candidate, pgd.lambda_step);
    Vector fx_residual = problem.X.multiply(fx) - problem.y;

    fixed_point_values.push_back(fx);
    residual_maps.push_back(fx - x);
    while (static_cast<int>(residual_maps.size()) > memory + 1) {
      fixed_point_values.pop_front();
      residual_maps.pop_front();
    }

    bool accepted_extrapolation = false;
    if (residual_maps.size() >= 2) {
      const Index mk = static_cast<Index>(residual_maps.size()) - 1;
      Eigen::MatrixXd dg(p, mk), df(p, mk);
      for (Index c = 0; c < mk; ++c) {
        dg.col(c) = residual_maps[c + 1] - residual_maps[c];
        df.col(c) = fixed_point_values[c + 1] - fixed_point_values[c];
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dg);
      const auto& r_diag = qr.matrixR();
      const double r_max = std::abs(r_diag(0, 0));
      const double r_min = std::abs(r_diag(mk - 1, mk - 1));
      if (qr.rank() < mk || r_min == 0.0 || r_max / r_min > 1e12) {
        // ill-conditioned history: restart from the current pair
        fixed_point_values.clear();
        residual_maps.clear();
        fixed_point_values.push_back(fx);
        residual_maps.push_back(fx - x);
        if (!restarted_note) {
          mon.add_note("anderson history restarted on ill-conditioning");
          restarted_note = true;
        }
      } else {
        const Vector mix = qr.solve(residual_maps.back());
        Vector x_acc = fixed_point_values.back() - df * mix;
        Vector acc_residual = problem.X.multiply(x_acc) - problem.y;
        const double primal_acc = 0.5 * acc_residual.squaredNorm() +
                                  sorted_l1_norm(x_acc, problem.lambda);
        const double primal_fx = 0.5 * fx_residual.squaredNorm() +
                                 sorted_l1_norm(fx, problem.lambda);
        if (primal_acc <= primal_fx) {
          x = std::move(x_acc);
          residual = std::move(acc_residual);
          accepted_extrapolation = true;
        }
      }
    }
    if (!accepted_extrapolation) {
      x = std::move(fx);
      residual = std::move(fx_residual);
    }

    const bool due = mon.due(epoch) || epoch == config.max_epochs;
    if (due && mon.checkpoint(epoch, x, residual)) break;
    if (mon.time_exhausted()) {
      if (!due) mon.checkpoint(epoch, x, residual);
      mon.add_note("not converged: time budget exhausted");
      break;
    }
  }
  return mon.finish(x);
}

namespace {

/// min ||[X; sqrt_rho I] d - [top; bottom]|| via LSQR, warm started at zero.
/// Returns the solution increment; `converged` reports whether the inner
/// tolerance was met within the iteration cap.
struct LsqrOutcome {
  Vector x;
  bool converged = false;
  int iterations = 0;
};

LsqrOutcome lsqr_stacked(const DesignMatrix& X, double sqrt_rho,
                         const Vector& top, const Vector& bottom, double tol,
                         int max_iterations) {
  const Index p = X.cols();
  LsqrOutcome out;
  out.x = Vector::Zero(p);

  Vector u_top = top;
  Vector u_bottom = bottom;
  double beta = std::sqrt(u_top.squaredNorm() + u_bottom.squaredNorm());
  const double b_norm = beta;
  if (beta == 0.0) {
    out.converged = true;
    return out;
  }
  u_top /= beta;
  u_bottom /= beta;

  Vector v = X.multiply_transpose(u_top) + sqrt_rho * u_bottom;
  double alpha = v.norm();
  if (alpha == 0.0) {
    out.converged = true;
    return out;
  }
  v /= alpha;

  Vector w = v;
  double phi_bar = beta;
  double rho_bar = alpha;
  double norm_a_sq = alpha * alpha;

  for (int it = 1; it <= max_iterations; ++it) {
    out.iterations = it;
    u_top = X.multiply(v) - alpha * u_top;
    u_bottom = sqrt_rho * v - alpha * u_bottom;
    beta = std::sqrt(u_top.squaredNorm() + u_bottom.squaredNorm());
    if (beta > 0.0) {
      u_top /= beta;
      u_bottom /= beta;
      v = X.multiply_transpose(u_top) + sqrt_rho * u_bottom - beta * v;
      alpha = v.norm();
      if (alpha > 0.0) v /= alpha;
    }
    norm_a_sq += alpha * alpha + beta * beta;

    const double rho = std::hypot(rho_bar, beta);
    const double c = rho_bar / rho;
    const double s = beta / rho;
    const double theta = s * alpha;
    rho_bar = -c * alpha;
    const double phi = c * phi_bar;
    phi_bar = s * phi_bar;

    out.x += (phi / rho) * w;
    w = v - (theta / rho) * w;

    // residual norm = phi_bar; ||A^T r|| estimate = phi_bar * alpha * |c|
    const double norm_a = std::sqrt(norm_a_sq);
    if (phi_bar <= tol * b_norm ||
        alpha * std::abs(c) <= tol * norm_a) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

SolveResult admm_solve(const Problem& problem, const SolverConfig& config,
                       const Vector& beta0) {
  require_kind(config, SolverKind::Admm);
  if (!(config.rho > 0.0)) {
    throw ContractViolation("ADMM rho must be positive");
  }
  Monitor mon(problem, config, SolverKind::Admm);
  mon.start_clock();

  const Index n = problem.n_samples();
  const Index p = problem.n_features();
  const double rho = config.rho;
  const LambdaSequence lambda_over_rho = problem.lambda.scaled(1.0 / rho);
  const Vector xty = problem.X.multiply_transpose(problem.y);

  // beta-update solver: cached factorization for dense X, LSQR on the
  // stacked system for sparse X.
  Eigen::LLT<Eigen::MatrixXd> chol;
  const bool use_woodbury = !problem.X.is_sparse() && p > n;
  if (!problem.X.is_sparse()) {
    const Eigen::MatrixXd dense = problem.X.dense_storage();
    if (use_woodbury) {
      Eigen::MatrixXd gram = dense * dense.transpose();
      gram.diagonal().array() += rho;
      chol.compute(gram);
    } else {
      Eigen::MatrixXd gram = dense.transpose() * dense;
      gram.diagonal().array() += rho;
      chol.compute(gram);
    }
  }
  const double sqrt_rho = std::sqrt(rho);
  const double lsqr_tol = std::min(1e-10, config.tol * 1e-2);
  const int lsqr_cap = static_cast<int>(4 * std::min(n, p)) + 20;
  bool lsqr_note = false;

  Vector beta = beta0;
  Vector w = beta0;
  Vector dual = Vector::Zero(p);
  Vector residual = problem.X.multiply(beta) - problem.y;
  if (mon.checkpoint(0, beta, residual)) return mon.finish(beta);

  for (long epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (problem.X.is_sparse()) {
      // warm start at the previous beta, solve for the increment
      const Vector target_bottom = sqrt_rho * (w - dual);
      const Vector shift_top = problem.y - problem.X.multiply(beta);
      const Vector shift_bottom = target_bottom - sqrt_rho * beta;
      LsqrOutcome inner = lsqr_stacked(problem.X, sqrt_rho, shift_top,
                                       shift_bottom, lsqr_tol, lsqr_cap);
      beta += inner.x;
      if (!inner.converged && !lsqr_note) {
        mon.add_note("lsqr hit its inner iteration cap; continuing with the best inner solution");
        lsqr_note = true;
      }
    } else {
      const Vector q = xty + rho * (w - dual);
      if (use_woodbury) {
        const Vector xq = problem.X.multiply(q);
        beta = (q - problem.X.multiply_transpose(chol.solve(xq))) / rho;
      } else {
        beta = chol.solve(q);
      }
    }
    w = prox_sorted_l1(beta + dual, lambda_over_rho);
    dual += beta - w;

    residual = problem.X.multiply(beta) - problem.y;
    const bool due = mon.due(epoch) || epoch == config.max_epochs;
    if (due && mon.checkpoint(epoch, beta, residual)) break;
    if (mon.time_exhausted()) {
      if (!due) mon.checkpoint(epoch, beta, residual);
      mon.add_note("not converged: time budget exhausted");
      break;
    }
  }
  return mon.finish(beta);
}

SolveResult oracle_cd_solve(const Problem& problem, const SolverConfig& config,
                            const ClusterStructure& oracle_clusters,
                            const Vector& oracle_signs) {
  require_kind(config, SolverKind::OracleCd);
  if (oracle_signs.size() != problem.n_features()) {
    throw ContractViolation("oracle sign vector length mismatch");
  }
  Monitor mon(problem, config, SolverKind::OracleCd);
  mon.start_clock();

  const Index n = problem.n_samples();
  const Index p = problem.n_features();

  // Collapse the nonzero clusters: one column per cluster (signed column
  // sum), one weight per cluster (its lambda rank window).
  std::vector<Index> active;
  for (Index i = 0; i < oracle_clusters.size(); ++i) {
    if (oracle_clusters.values[i] > 0.0) active.push_back(i);
  }
  const Index m = static_cast<Index>(active.size());

  const auto expand = [&](const Vector& z) {
    Vector beta = Vector::Zero(p);
    for (Index i = 0; i < m; ++i) {
      for (Index j : oracle_clusters.members[active[i]]) {
        beta[j] = oracle_signs[j] * z[i];
      }
    }
    return beta;
  };

  if (m == 0) {
    const Vector beta = Vector::Zero(p);
    mon.checkpoint(0, beta, -problem.y);
    return mon.finish(beta);
  }

  Eigen::MatrixXd collapsed(n, m);
  Vector weights(m);
  {
    Index rank = 0;
    Index active_pos = 0;
    for (Index i = 0; i < oracle_clusters.size(); ++i) {
      const Index size = static_cast<Index>(oracle_clusters.members[i].size());
      if (oracle_clusters.values[i] > 0.0) {
        Vector col = Vector::Zero(n);
        for (Index j : oracle_clusters.members[i]) {
          problem.X.add_column(j, oracle_signs[j], col);
        }
        collapsed.col(active_pos) = col;
        double wsum = 0.0;
        for (Index t = rank; t < rank + size; ++t) wsum += problem.lambda[t];
        weights[active_pos] = wsum;
        ++active_pos;
      }
      rank += size;
    }
  }
  const Vector col_sq = collapsed.colwise().squaredNorm().transpose();

  Vector z = Vector::Zero(m);
  Vector collapsed_residual = -problem.y;  // collapsed * z - y

  // Weighted-l1 duality gap of the collapsed problem, in the cancellation-free
  // form (own stopping rule; the SLOPE primal is what goes into the trace).
  const auto own_gap = [&](const Vector& zz, const Vector& res) {
    const Vector grad = collapsed.transpose() * res;
    double alpha = 0.0;
    for (Index i = 0; i < m; ++i) {
      const double mag = std::abs(grad[i]);
      if (weights[i] > 0.0) {
        alpha = std::max(alpha, mag / weights[i]);
      } else if (mag > 0.0) {
        alpha = std::numeric_limits<double>::infinity();
      }
    }
    const double shrink = std::max(1.0, alpha);
    double gap = weights.dot(zz.cwiseAbs());
    if (shrink == std::numeric_limits<double>::infinity()) {
      gap += 0.5 * res.squaredNorm();
    } else {
      const double slack = 1.0 - 1.0 / shrink;
      gap += zz.dot(grad) / shrink + 0.5 * slack * slack * res.squaredNorm();
    }
    return gap;
  };

  const auto record = [&](long epoch) {
    const Vector beta = expand(z);
    const double primal = 0.5 * collapsed_residual.squaredNorm() +
                          sorted_l1_norm(beta, problem.lambda);
    const double gap = own_gap(z, collapsed_residual);
    return mon.record_raw(epoch, primal, gap, beta);
  };

  if (record(0)) return mon.finish(expand(z));
  for (long epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (Index i = 0; i < m; ++i) {
      if (col_sq[i] == 0.0) continue;
      const double pivot =
          col_sq[i] * z[i] - collapsed.col(i).dot(collapsed_residual);
      const double shrunk = std::abs(pivot) - weights[i];
      const double z_new =
          shrunk <= 0.0 ? 0.0 : std::copysign(shrunk, pivot) / col_sq[i];
      if (z_new != z[i]) {
        collapsed_residual += (z_new - z[i]) * collapsed.col(i);
        z[i] = z_new;
      }
    }
    const bool due = mon.due(epoch) || epoch == config.max_epochs;
    if (due && record(epoch)) break;
    if (mon.time_exhausted()) {
      if (!due) record(epoch);
      mon.add_note("not converged: time budget exhausted");
      break;
    }
  }
  return mon.finish(expand(z));
}

SolveResult solve(const Problem& problem, const SolverConfig& config,
                  const Vector& beta0) {
  switch (config.solver) {
    case SolverKind::Hybrid: return hybrid_solve(problem, config, beta0);
    case SolverKind::Pgd: return pgd_solve(problem, config, beta0);
    case SolverKind::Fista: return fista_solve(problem, config, beta0);
    case SolverKind::AndersonPgd:
      return anderson_pgd_solve(problem, config, beta0);
    case SolverKind::Admm: return admm_solve(problem, config, beta0);
    case SolverKind::OracleCd:
      throw ContractViolation(
          "oracle_cd_solve needs oracle clusters and signs");
  }
  throw ContractViolation("unknown solver kind");
}

}  // namespace slope
