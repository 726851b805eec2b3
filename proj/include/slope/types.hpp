#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slope {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;

/// Thrown when a caller breaks an operation's contract (dimension mismatch,
/// out-of-range index, invalid parameter value).
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when input data is unusable: parse failures, degenerate penalties,
/// matrices with no usable features.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-increasing, non-negative regularization weights for the sorted-l1
/// penalty. Validated on construction.
class LambdaSequence {
 public:
  LambdaSequence() = default;
  explicit LambdaSequence(Vector values);

  Index size() const { return values_.size(); }
  double operator[](Index j) const { return values_[j]; }
  const Vector& values() const { return values_; }

  /// Sequence with every weight multiplied by `factor` (factor >= 0).
  LambdaSequence scaled(double factor) const;

  bool all_zero() const { return size() == 0 || values_[0] == 0.0; }

 private:
  Vector values_;
};

/// Feature matrix with either dense row-major storage or sparse
/// compressed-column storage. The coordinate-descent kernel consumes columns,
/// so the sparse format keeps each column contiguous; the dense format goes
/// through strided column views.
class DesignMatrix {
 public:
  using DenseStorage =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  DesignMatrix() = default;

  static DesignMatrix dense(Eigen::MatrixXd x);

  /// Compressed-column storage. Column pointers must be non-decreasing and
  /// end at nnz; row indices must be strictly increasing within each column.
  static DesignMatrix sparse(Index rows, Index cols,
                             std::vector<Index> col_ptr,
                             std::vector<Index> row_idx,
                             std::vector<double> values);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_sparse() const { return sparse_; }
  Index nnz() const;

  /// X v
  Vector multiply(const Vector& v) const;
  /// X^T w
  Vector multiply_transpose(const Vector& w) const;
  /// X_{:j}^T w
  double column_dot(Index j, const Vector& w) const;
  double column_squared_norm(Index j) const;
  Index column_nnz(Index j) const;
  /// out += coef * X_{:j}
  void add_column(Index j, double coef, Vector& out) const;

  const DenseStorage& dense_storage() const;
  const std::vector<Index>& col_ptr() const { return col_ptr_; }
  const std::vector<Index>& row_idx() const { return row_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  void check_column(Index j) const;

  DenseStorage dense_;
  std::vector<Index> col_ptr_;
  std::vector<Index> row_idx_;
  std::vector<double> values_;
  Index rows_ = 0;
  Index cols_ = 0;
  bool sparse_ = false;
};

/// A SLOPE instance: least squares on (X, y) plus the sorted-l1 penalty.
struct Problem {
  Problem(DesignMatrix x, Vector y_in, LambdaSequence lambda_in);

  DesignMatrix X;
  Vector y;
  LambdaSequence lambda;

  Index n_samples() const { return X.rows(); }
  Index n_features() const { return X.cols(); }
};

/// 0.5 * ||y - X beta||^2 + J(beta)
double primal_objective(const Problem& problem, const Vector& beta);

struct TraceRecord {
  double wall_time = 0.0;  // seconds since the solver started
  long epoch = 0;
  double primal = 0.0;
  double gap = 0.0;
};

/// Per-checkpoint convergence records emitted by every solver.
struct ConvergenceTrace {
  std::vector<TraceRecord> records;
  std::string solver_name;
  std::string config_digest;
  bool converged = false;
  std::string note;  // diagnostics (budget exhaustion, inner-solver trouble)
};

}  // namespace slope
