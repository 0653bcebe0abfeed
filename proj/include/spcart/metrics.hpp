#pragma once

#include <vector>

#include "spcart/matrix_input.hpp"

namespace spcart {

/// Entries with |x_i| at or below this count as zero.
inline constexpr double kZeroTolerance = 1e-12;

struct MetricsSnapshot {
  double sp_mean = 0;
  double sp_std = 0;    // sample standard deviation (n-1); 0 when r = 1
  double sp_worst = 0;  // min over columns
  double nor = 0;       // 0 when r = 1
  double ev = 0;
  double cpev = 0;
  Vector per_column_sparsity;
  std::vector<Eigen::Index> per_column_cardinality;

  /// Total cardinality NZ.
  Eigen::Index nz() const;
};

struct Nonorthogonality {
  double nor = 0;
  Matrix abs_cos;  // symmetric, zero diagonal
};

Eigen::Index cardinality(const Vector& x);
/// s(x) = 1 - ‖x‖₀/p.
double sparsity(const Vector& x);

/// tr(XᵀAᵀAX) or tr(XᵀCX).
double explained_variance(const MatrixInput& input, const Matrix& x);

/// Variance captured by span(X) over total variance.
double cpev(const MatrixInput& input, const Matrix& x);

Nonorthogonality nonorthogonality(const Matrix& x);

/// Angle in [0, π/2] between x and z using the unsigned cosine; π/2 when
/// x is zero.
double deviation_angle(const Vector& x, const Vector& z);

MetricsSnapshot compute_metrics(const MatrixInput& input, const Matrix& x);

}  // namespace spcart
