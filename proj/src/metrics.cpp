#include "spcart/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spcart/errors.hpp"
#include "spcart/linalg.hpp"

namespace spcart {

Eigen::Index MetricsSnapshot::nz() const {
  Eigen::Index total = 0;
  for (auto c : per_column_cardinality) total += c;
  return total;
}

Eigen::Index cardinality(const Vector& x) {
  return (x.array().abs() > kZeroTolerance).count();
}

double sparsity(const Vector& x) {
  if (x.size() == 0) throw ArgumentError("x", "p >= 1", "empty vector");
  return 1.0 - static_cast<double>(cardinality(x)) / static_cast<double>(x.size());
}

namespace {

void require_rows(const MatrixInput& input, const Matrix& x) {
  if (x.rows() != input.variables())
    throw ArgumentError("X", "p = " + std::to_string(input.variables()) + " rows",
                        "loading matrix has " + std::to_string(x.rows()) + " rows");
}

}  // namespace

double explained_variance(const MatrixInput& input, const Matrix& x) {
  require_rows(input, x);
  if (input.is_data()) return (input.matrix() * x).squaredNorm();
  return (x.transpose() * input.matrix() * x).trace();
}

double cpev(const MatrixInput& input, const Matrix& x) {
  require_rows(input, x);
  const Matrix basis = orthonormal_span(x);
  return explained_variance(input, basis) / input.total_variance();
}

Nonorthogonality nonorthogonality(const Matrix& x) {
  const Eigen::Index r = x.cols();
  if (r < 2) throw ArgumentError("X", "r >= 2 columns", "nonorthogonality of one loading");
  Nonorthogonality out{0.0, Matrix::Zero(r, r)};
  const Vector norms = x.colwise().norm().transpose();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = i + 1; j < r; ++j) {
      const double denom = norms(i) * norms(j);
      const double c = denom > 0.0 ? std::abs(x.col(i).dot(x.col(j))) / denom : 0.0;
      out.abs_cos(i, j) = out.abs_cos(j, i) = c;
      sum += 2.0 * c;
    }
  }
  out.nor = sum / static_cast<double>(r * (r - 1));
  return out;
}

double deviation_angle(const Vector& x, const Vector& z) {
  const double xn = x.norm();
  const double zn = z.norm();
  if (!(xn > 0.0) || !(zn > 0.0)) return std::numbers::pi / 2.0;
  const Vector xu = x / xn;
  const Vector zu = z / zn;
  const double c = std::abs(xu.dot(zu));
  // Residual form keeps small angles accurate where acos would not.
  const double s = (xu - xu.dot(zu) * zu).norm();
  return std::atan2(s, c);
}

MetricsSnapshot compute_metrics(const MatrixInput& input, const Matrix& x) {
  MetricsSnapshot m;
  const Eigen::Index r = x.cols();
  m.per_column_sparsity.resize(r);
  m.per_column_cardinality.resize(static_cast<size_t>(r));
  for (Eigen::Index j = 0; j < r; ++j) {
    m.per_column_sparsity(j) = sparsity(x.col(j));
    m.per_column_cardinality[static_cast<size_t>(j)] = cardinality(x.col(j));
  }
  m.sp_mean = m.per_column_sparsity.mean();
  m.sp_worst = m.per_column_sparsity.minCoeff();
  if (r > 1) {
    const double ss = (m.per_column_sparsity.array() - m.sp_mean).square().sum();
    m.sp_std = std::sqrt(ss / static_cast<double>(r - 1));
    m.nor = nonorthogonality(x).nor;
  }
  m.ev = explained_variance(input, x);
  m.cpev = cpev(input, x);
  return m;
}

}  // namespace spcart
