#include "slope/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "slope/rng.hpp"
#include "slope/sorted_l1.hpp"

namespace slope {

namespace {

constexpr double kSqrt2Pi = 2.506628274631000502415765284811;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Rational initial guess for the normal quantile.
double probit_guess(double u) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  if (u < low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u > 1.0 - low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = u - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double probit(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw ContractViolation("probit argument must lie in (0, 1)");
  }
  // reflect into the lower tail, where the erfc-based CDF keeps full
  // relative accuracy and the refinement loses nothing to cancellation
  if (u > 0.5) return -probit(1.0 - u);
  double x = probit_guess(u);
  // two Halley refinements take the rational guess to full precision
  for (int it = 0; it < 2; ++it) {
    const double err = normal_cdf(x) - u;
    const double step = err * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= step / (1.0 + 0.5 * x * step);
  }
  return x;
}

LambdaSequence bh_lambda(Index p, double q) {
  if (p <= 0) throw ContractViolation("bh_lambda needs p >= 1");
  if (!(q > 0.0 && q < 1.0)) {
    throw ContractViolation("bh_lambda parameter q must lie in (0, 1)");
  }
  Vector values(p);
  for (Index j = 0; j < p; ++j) {
    values[j] =
        probit(1.0 - q * static_cast<double>(j + 1) / (2.0 * static_cast<double>(p)));
  }
  return LambdaSequence(std::move(values));
}

double lambda_max_scale(const DesignMatrix& X, const Vector& y,
                        const LambdaSequence& lambda) {
  if (y.size() != X.rows() || lambda.size() != X.cols()) {
    throw ContractViolation("lambda_max_scale dimension mismatch");
  }
  if (lambda.all_zero()) {
    throw DataError("penalty degenerate: lambda has no positive entry");
  }
  return dual_ball_scaling(X.multiply_transpose(y), lambda).alpha;
}

SimulatedProblem simulate(const ScenarioSpec& spec) {
  if (spec.n <= 0 || spec.p <= 0) {
    throw ContractViolation("simulate needs n >= 1 and p >= 1");
  }
  if (spec.k < 0 || spec.k > spec.p) {
    throw ContractViolation("simulate needs 0 <= k <= p");
  }
  if (!(spec.density > 0.0 && spec.density <= 1.0)) {
    throw ContractViolation("simulate needs density in (0, 1]");
  }
  if (!(spec.snr > 0.0)) {
    throw ContractViolation("simulate needs snr > 0");
  }

  Rng rng(spec.seed);
  SimulatedProblem sim;

  if (spec.density == 1.0) {
    // AR(1) columns: each marginally standard normal, corr(j, j') = rho^|j-j'|,
    // then shifted to population mean one.
    Eigen::MatrixXd x(spec.n, spec.p);
    const double rho = spec.rho_corr;
    const double innovation = std::sqrt(1.0 - rho * rho);
    for (Index j = 0; j < spec.p; ++j) {
      for (Index i = 0; i < spec.n; ++i) {
        const double z = rng.normal();
        x(i, j) = j == 0 ? z : rho * x(i, j - 1) + innovation * z;
      }
    }
    x.array() += 1.0;
    sim.X = DesignMatrix::dense(x);
  } else {
    std::vector<Index> col_ptr(spec.p + 1, 0);
    std::vector<Index> row_idx;
    std::vector<double> values;
    for (Index j = 0; j < spec.p; ++j) {
      for (Index i = 0; i < spec.n; ++i) {
        if (rng.uniform() < spec.density) {
          row_idx.push_back(i);
          values.push_back(rng.normal());
        }
      }
      col_ptr[j + 1] = static_cast<Index>(values.size());
    }
    sim.X = DesignMatrix::sparse(spec.n, spec.p, std::move(col_ptr),
                                 std::move(row_idx), std::move(values));
  }

  // k support positions drawn uniformly without replacement
  sim.beta_true = Vector::Zero(spec.p);
  std::vector<Index> pool(spec.p);
  for (Index j = 0; j < spec.p; ++j) pool[j] = j;
  for (Index t = 0; t < spec.k; ++t) {
    const Index pick =
        t + static_cast<Index>(rng.below(static_cast<std::uint64_t>(spec.p - t)));
    std::swap(pool[t], pool[pick]);
    sim.beta_true[pool[t]] = rng.normal();
  }

  const Vector signal = sim.X.multiply(sim.beta_true);
  Vector noise = rng.normal_vector(spec.n);
  const double signal_norm = signal.norm();
  const double noise_norm = noise.norm();
  if (signal_norm > 0.0 && noise_norm > 0.0) {
    noise *= signal_norm / (spec.snr * noise_norm);
  }
  sim.y = signal + noise;
  return sim;
}

PreprocessResult preprocess(const DesignMatrix& X, bool dense_mode) {
  if (dense_mode && X.is_sparse()) {
    throw ContractViolation(
        "dense-mode preprocessing (centering) needs dense storage");
  }
  const Index n = X.rows();
  const Index p = X.cols();

  std::vector<Index> kept;
  std::vector<Index> dropped;
  for (Index j = 0; j < p; ++j) {
    if (X.column_nnz(j) < 3) {
      dropped.push_back(j);
    } else {
      kept.push_back(j);
    }
  }

  std::vector<double> centers;
  std::vector<double> scales;
  std::vector<Index> final_kept;

  if (dense_mode) {
    const auto& dense = X.dense_storage();
    for (Index j : kept) {
      const double mean = dense.col(j).mean();
      const double variance =
          (dense.col(j).array() - mean).square().sum() / static_cast<double>(n);
      const double stddev = std::sqrt(variance);
      if (stddev == 0.0) {
        dropped.push_back(j);
        continue;
      }
      final_kept.push_back(j);
      centers.push_back(mean);
      scales.push_back(stddev);
    }
  } else {
    for (Index j : kept) {
      double max_abs = 0.0;
      if (X.is_sparse()) {
        for (Index t = X.col_ptr()[j]; t < X.col_ptr()[j + 1]; ++t) {
          max_abs = std::max(max_abs, std::abs(X.values()[t]));
        }
      } else {
        max_abs = X.dense_storage().col(j).cwiseAbs().maxCoeff();
      }
      if (max_abs == 0.0) {
        dropped.push_back(j);
        continue;
      }
      final_kept.push_back(j);
      centers.push_back(0.0);
      scales.push_back(max_abs);
    }
  }

  if (final_kept.empty()) {
    throw DataError("no usable features after preprocessing");
  }
  std::sort(dropped.begin(), dropped.end());

  PreprocessResult out;
  const Index kept_count = static_cast<Index>(final_kept.size());
  out.dropped = std::move(dropped);
  out.centers = Eigen::Map<const Vector>(centers.data(), kept_count);
  out.scales = Eigen::Map<const Vector>(scales.data(), kept_count);

  if (X.is_sparse()) {
    std::vector<Index> col_ptr(kept_count + 1, 0);
    std::vector<Index> row_idx;
    std::vector<double> values;
    for (Index jj = 0; jj < kept_count; ++jj) {
      const Index j = final_kept[jj];
      for (Index t = X.col_ptr()[j]; t < X.col_ptr()[j + 1]; ++t) {
        row_idx.push_back(X.row_idx()[t]);
        values.push_back(X.values()[t] / out.scales[jj]);
      }
      col_ptr[jj + 1] = static_cast<Index>(values.size());
    }
    out.X = DesignMatrix::sparse(n, kept_count, std::move(col_ptr),
                                 std::move(row_idx), std::move(values));
  } else {
    Eigen::MatrixXd transformed(n, kept_count);
    const auto& dense = X.dense_storage();
    for (Index jj = 0; jj < kept_count; ++jj) {
      const Index j = final_kept[jj];
      transformed.col(jj) =
          (dense.col(j).array() - out.centers[jj]) / out.scales[jj];
    }
    out.X = DesignMatrix::dense(std::move(transformed));
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, long line,
                             const std::string& what) {
  std::ostringstream msg;
  msg << path << ":" << line << ": " << what;
  throw DataError(msg.str());
}

}  // namespace

std::pair<DesignMatrix, Vector> read_libsvm(const std::string& path,
                                            Index n_features) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  std::vector<double> labels;
  std::vector<std::vector<std::pair<Index, double>>> rows;
  Index max_index = 0;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;  // blank or comment-only line

    std::size_t used = 0;
    double label = 0.0;
    try {
      label = std::stod(tok, &used);
    } catch (const std::exception&) {
      parse_fail(path, line_no, "bad label '" + tok + "'");
    }
    if (used != tok.size()) parse_fail(path, line_no, "bad label '" + tok + "'");

    std::vector<std::pair<Index, double>> entries;
    Index prev_index = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
        parse_fail(path, line_no, "bad feature token '" + tok + "'");
      }
      Index index = 0;
      double value = 0.0;
      try {
        index = static_cast<Index>(std::stoll(tok.substr(0, colon), &used));
        if (used != colon) throw std::invalid_argument("trailing");
        value = std::stod(tok.substr(colon + 1), &used);
        if (used != tok.size() - colon - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad feature token '" + tok + "'");
      }
      if (index <= 0) parse_fail(path, line_no, "feature index must be >= 1");
      if (index <= prev_index) {
        parse_fail(path, line_no, "feature indices must be strictly increasing");
      }
      prev_index = index;
      max_index = std::max(max_index, index);
      entries.emplace_back(index - 1, value);
    }
    labels.push_back(label);
    rows.push_back(std::move(entries));
  }

  Index p = n_features > 0 ? n_features : max_index;
  if (n_features > 0 && max_index > n_features) {
    throw DataError(path + ": feature index exceeds the requested width");
  }
  const Index n = static_cast<Index>(rows.size());

  std::vector<Index> col_counts(p, 0);
  for (const auto& row : rows) {
    for (const auto& [j, v] : row) ++col_counts[j];
  }
  std::vector<Index> col_ptr(p + 1, 0);
  for (Index j = 0; j < p; ++j) col_ptr[j + 1] = col_ptr[j] + col_counts[j];
  std::vector<Index> row_idx(col_ptr[p]);
  std::vector<double> values(col_ptr[p]);
  std::vector<Index> cursor(col_ptr.begin(), col_ptr.end() - 1);
  for (Index i = 0; i < n; ++i) {
    for (const auto& [j, v] : rows[i]) {
      row_idx[cursor[j]] = i;
      values[cursor[j]] = v;
      ++cursor[j];
    }
  }
  Vector y = Eigen::Map<const Vector>(labels.data(), n);
  return {DesignMatrix::sparse(n, p, std::move(col_ptr), std::move(row_idx),
                               std::move(values)),
          std::move(y)};
}

namespace {

constexpr char kSimMagic[6] = {'S', 'L', 'S', 'I', 'M', '1'};

template <typename T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw DataError("truncated simulated-problem cache");
  return value;
}

}  // namespace

void write_simulated(const std::string& path, const SimulatedProblem& sim) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(kSimMagic, sizeof(kSimMagic));
  const std::uint8_t kind = sim.X.is_sparse() ? 1 : 0;
  write_raw(out, kind);
  write_raw(out, static_cast<std::uint64_t>(sim.X.rows()));
  write_raw(out, static_cast<std::uint64_t>(sim.X.cols()));
  if (sim.X.is_sparse()) {
    write_raw(out, static_cast<std::uint64_t>(sim.X.nnz()));
    for (Index v : sim.X.col_ptr()) write_raw(out, static_cast<std::uint64_t>(v));
    for (Index v : sim.X.row_idx()) write_raw(out, static_cast<std::uint64_t>(v));
    for (double v : sim.X.values()) write_raw(out, v);
  } else {
    const auto& dense = sim.X.dense_storage();
    for (Index i = 0; i < dense.rows(); ++i) {
      for (Index j = 0; j < dense.cols(); ++j) write_raw(out, dense(i, j));
    }
  }
  for (Index i = 0; i < sim.y.size(); ++i) write_raw(out, sim.y[i]);
  for (Index j = 0; j < sim.beta_true.size(); ++j) {
    write_raw(out, sim.beta_true[j]);
  }
  if (!out) throw DataError("failed writing " + path);
}

SimulatedProblem read_simulated(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  char magic[6];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kSimMagic, sizeof(magic)) != 0) {
    throw DataError(path + ": not a simulated-problem cache");
  }
  const auto kind = read_raw<std::uint8_t>(in);
  const Index n = static_cast<Index>(read_raw<std::uint64_t>(in));
  const Index p = static_cast<Index>(read_raw<std::uint64_t>(in));

  SimulatedProblem sim;
  if (kind == 1) {
    const auto nnz = static_cast<Index>(read_raw<std::uint64_t>(in));
    std::vector<Index> col_ptr(p + 1);
    for (Index& v : col_ptr) v = static_cast<Index>(read_raw<std::uint64_t>(in));
    std::vector<Index> row_idx(nnz);
    for (Index& v : row_idx) v = static_cast<Index>(read_raw<std::uint64_t>(in));
    std::vector<double> values(nnz);
    for (double& v : values) v = read_raw<double>(in);
    sim.X = DesignMatrix::sparse(n, p, std::move(col_ptr), std::move(row_idx),
                                 std::move(values));
  } else if (kind == 0) {
    DesignMatrix::DenseStorage dense(n, p);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < p; ++j) dense(i, j) = read_raw<double>(in);
    }
    sim.X = DesignMatrix::dense(std::move(dense));
  } else {
    throw DataError(path + ": unknown storage kind");
  }
  sim.y.resize(n);
  for (Index i = 0; i < n; ++i) sim.y[i] = read_raw<double>(in);
  sim.beta_true.resize(p);
  for (Index j = 0; j < p; ++j) sim.beta_true[j] = read_raw<double>(in);
  return sim;
}

}  // namespace slope
