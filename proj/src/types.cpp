#include "slope/types.hpp"

namespace slope {

LambdaSequence::LambdaSequence(Vector values) : values_(std::move(values)) {
  for (Index j = 0; j < values_.size(); ++j) {
    if (!(values_[j] >= 0.0)) {
      throw ContractViolation("lambda sequence must be non-negative");
    }
    if (j > 0 && values_[j] > values_[j - 1]) {
      throw ContractViolation("lambda sequence must be non-increasing");
    }
  }
}

LambdaSequence LambdaSequence::scaled(double factor) const {
  if (!(factor >= 0.0)) {
    throw ContractViolation("lambda scaling factor must be non-negative");
  }
  return LambdaSequence(values_ * factor);
}

DesignMatrix DesignMatrix::dense(Eigen::MatrixXd x) {
  DesignMatrix m;
  m.rows_ = x.rows();
  m.cols_ = x.cols();
  m.dense_ = std::move(x);  // converts to row-major storage
  m.sparse_ = false;
  return m;
}

DesignMatrix DesignMatrix::sparse(Index rows, Index cols,
                                  std::vector<Index> col_ptr,
                                  std::vector<Index> row_idx,
                                  std::vector<double> values) {
  if (rows < 0 || cols < 0) {
    throw ContractViolation("sparse matrix dimensions must be non-negative");
  }
  if (static_cast<Index>(col_ptr.size()) != cols + 1) {
    throw ContractViolation("column pointer array must have cols + 1 entries");
  }
  if (row_idx.size() != values.size()) {
    throw ContractViolation("row index and value arrays must match in length");
  }
  if (col_ptr.front() != 0 ||
      col_ptr.back() != static_cast<Index>(values.size())) {
    throw ContractViolation("column pointers must start at 0 and end at nnz");
  }
  for (Index j = 0; j < cols; ++j) {
    if (col_ptr[j + 1] < col_ptr[j]) {
      throw ContractViolation("column pointers must be non-decreasing");
    }
    for (Index t = col_ptr[j]; t < col_ptr[j + 1]; ++t) {
      if (row_idx[t] < 0 || row_idx[t] >= rows) {
        throw ContractViolation("row index out of range");
      }
      if (t > col_ptr[j] && row_idx[t] <= row_idx[t - 1]) {
        throw ContractViolation(
            "row indices must be strictly increasing within a column");
      }
    }
  }
  DesignMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.col_ptr_ = std::move(col_ptr);
  m.row_idx_ = std::move(row_idx);
  m.values_ = std::move(values);
  m.sparse_ = true;
  return m;
}

Index DesignMatrix::nnz() const {
  if (sparse_) return static_cast<Index>(values_.size());
  return rows_ * cols_;
}

void DesignMatrix::check_column(Index j) const {
  if (j < 0 || j >= cols_) {
    throw ContractViolation("column index out of range");
  }
}

Vector DesignMatrix::multiply(const Vector& v) const {
  if (v.size() != cols_) {
    throw ContractViolation("matvec dimension mismatch");
  }
  if (!sparse_) return dense_ * v;
  Vector out = Vector::Zero(rows_);
  for (Index j = 0; j < cols_; ++j) {
    const double vj = v[j];
    if (vj == 0.0) continue;
    for (Index t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t) {
      out[row_idx_[t]] += values_[t] * vj;
    }
  }
  return out;
}

Vector DesignMatrix::multiply_transpose(const Vector& w) const {
  if (w.size() != rows_) {
    throw ContractViolation("matvec dimension mismatch");
  }
  if (!sparse_) return dense_.transpose() * w;
  Vector out(cols_);
  for (Index j = 0; j < cols_; ++j) {
    double acc = 0.0;
    for (Index t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t) {
      acc += values_[t] * w[row_idx_[t]];
    }
    out[j] = acc;
  }
  return out;
}

double DesignMatrix::column_dot(Index j, const Vector& w) const {
  check_column(j);
  if (w.size() != rows_) {
    throw ContractViolation("column_dot dimension mismatch");
  }
  if (!sparse_) return dense_.col(j).dot(w);
  double acc = 0.0;
  for (Index t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t) {
    acc += values_[t] * w[row_idx_[t]];
  }
  return acc;
}

double DesignMatrix::column_squared_norm(Index j) const {
  check_column(j);
  if (!sparse_) return dense_.col(j).squaredNorm();
  double acc = 0.0;
  for (Index t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t) {
    acc += values_[t] * values_[t];
  }
  return acc;
}

Index DesignMatrix::column_nnz(Index j) const {
  check_column(j);
  if (sparse_) return col_ptr_[j + 1] - col_ptr_[j];
  Index count = 0;
  for (Index i = 0; i < rows_; ++i) {
    if (dense_(i, j) != 0.0) ++count;
  }
  return count;
}

void DesignMatrix::add_column(Index j, double coef, Vector& out) const {
  check_column(j);
  if (out.size() != rows_) {
    throw ContractViolation("add_column dimension mismatch");
  }
  if (!sparse_) {
    out += coef * dense_.col(j);
    return;
  }
  for (Index t = col_ptr_[j]; t < col_ptr_[j + 1]; ++t) {
    out[row_idx_[t]] += coef * values_[t];
  }
}

const DesignMatrix::DenseStorage& DesignMatrix::dense_storage() const {
  if (sparse_) {
    throw ContractViolation("dense_storage() called on a sparse matrix");
  }
  return dense_;
}

Problem::Problem(DesignMatrix x, Vector y_in, LambdaSequence lambda_in)
    : X(std::move(x)), y(std::move(y_in)), lambda(std::move(lambda_in)) {
  if (y.size() != X.rows()) {
    throw ContractViolation("response length must equal the number of rows");
  }
  if (lambda.size() != X.cols()) {
    throw ContractViolation("lambda length must equal the number of columns");
  }
}

}  // namespace slope
