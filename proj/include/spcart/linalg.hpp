#pragma once

#include "spcart/matrix_input.hpp"

namespace spcart {

/// M ≈ U·diag(σ)·Vᵀ with k columns. Each right singular vector is signed so
/// that its largest-magnitude entry is positive (lowest index on ties), and
/// the matching left vector is flipped with it.
struct ThinSvd {
  Matrix left;
  Vector singular_values;
  Matrix right;
};

struct CenteredData {
  Matrix matrix;
  Vector column_means;
};

/// Leading r principal directions of an input.
struct PcaBasis {
  Matrix loadings;      // p×r, orthonormal columns
  Vector spectrum;      // singular values (data) or eigenvalues (covariance)
  Vector variances;     // σᵢ² or eigenvalues; EV(V) is their sum
  double explained_variance() const { return variances.sum(); }
};

ThinSvd thin_svd(const Matrix& m, Eigen::Index k);

/// Orthonormal factor W·Qᵀ of B = W·D·Qᵀ. Requires B to have at least as many
/// rows as columns and full column rank.
Matrix polar(const Matrix& b);

/// Orthonormal basis of span(X), numerical rank at 1e-10·σ_max.
Matrix orthonormal_span(const Matrix& x);

CenteredData center_columns(const Matrix& m);

PcaBasis pca_loadings(const MatrixInput& input, Eigen::Index r);

/// Flip signs of the columns of `v` (and the same columns of `u`, when given)
/// so each column's largest-magnitude entry is positive.
void canonicalize_signs(Matrix& v, Matrix* u = nullptr);

/// Relative tolerances shared by the factorizations.
inline constexpr double kRankTolerance = 1e-10;
inline constexpr double kPolarMinSingular = 1e-12;
inline constexpr double kCovarianceTolerance = 1e-8;

}  // namespace spcart
