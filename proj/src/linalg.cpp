#include "spcart/linalg.hpp"

#include <Eigen/SVD>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "spcart/errors.hpp"

namespace spcart {

MatrixInput MatrixInput::data(Matrix a) {
  if (a.rows() == 0 || a.cols() == 0) throw InputError("data matrix is empty");
  if (!a.allFinite()) throw InputError("data matrix has non-finite entries");
  return MatrixInput(Kind::Data, std::move(a));
}

MatrixInput MatrixInput::covariance(Matrix c) {
  if (c.rows() == 0 || c.rows() != c.cols())
    throw InputError("covariance matrix must be square and non-empty, got " +
                     std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
  if (!c.allFinite()) throw InputError("covariance matrix has non-finite entries");
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  const double asym = (c - c.transpose()).cwiseAbs().maxCoeff();
  if (asym > kCovarianceTolerance * scale)
    throw InputError("covariance matrix is not symmetric (max |C - C^T| = " +
                     std::to_string(asym) + ")");
  return MatrixInput(Kind::Covariance, std::move(c));
}

Matrix MatrixInput::gram() const {
  if (kind_ == Kind::Covariance) return matrix_;
  return matrix_.transpose() * matrix_;
}

double MatrixInput::total_variance() const {
  if (kind_ == Kind::Covariance) return matrix_.trace();
  return matrix_.squaredNorm();
}

Vector MatrixInput::apply_gram(const Vector& x) const {
  if (kind_ == Kind::Covariance) return matrix_ * x;
  return matrix_.transpose() * (matrix_ * x);
}

void canonicalize_signs(Matrix& v, Matrix* u) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (v(best, j) < 0.0) {
      v.col(j) = -v.col(j);
      if (u != nullptr) u->col(j) = -u->col(j);
    }
  }
}

ThinSvd thin_svd(const Matrix& m, Eigen::Index k) {
  if (!m.allFinite()) throw InputError("thin_svd: matrix has non-finite entries");
  const Eigen::Index kmax = std::min(m.rows(), m.cols());
  if (k < 1 || k > kmax)
    throw ArgumentError("k", "1 <= k <= " + std::to_string(kmax),
                        "rank " + std::to_string(k) + " out of range");
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ThinSvd out{svd.matrixU().leftCols(k), svd.singularValues().head(k),
              svd.matrixV().leftCols(k)};
  canonicalize_signs(out.right, &out.left);
  return out;
}

Matrix polar(const Matrix& b) {
  if (b.rows() < b.cols())
    throw ArgumentError("B", "rows >= cols", "polar factor of a wide matrix");
  const ThinSvd svd = thin_svd(b, b.cols());
  const double smallest = svd.singular_values(b.cols() - 1);
  if (!(smallest > kPolarMinSingular))
    throw DegeneracyError("polar: matrix is rank deficient (smallest singular value " +
                              std::to_string(smallest) + ")",
                          smallest);
  return svd.left * svd.right.transpose();
}

Matrix orthonormal_span(const Matrix& x) {
  if (!x.allFinite()) throw InputError("orthonormal_span: non-finite entries");
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || !(s(0) > 0.0))
    throw DegeneracyError("orthonormal_span: matrix is zero", 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > kRankTolerance * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

CenteredData center_columns(const Matrix& m) {
  if (m.rows() < 2)
    throw ArgumentError("rows", "n >= 2", "cannot center fewer than two samples");
  CenteredData out;
  out.column_means = m.colwise().mean().transpose();
  out.matrix = m.rowwise() - out.column_means.transpose();
  return out;
}

PcaBasis pca_loadings(const MatrixInput& input, Eigen::Index r) {
  const Matrix& m = input.matrix();
  PcaBasis out;
  if (input.is_data()) {
    const Eigen::Index kmax = std::min(m.rows(), m.cols());
    if (r < 1 || r > kmax)
      throw ArgumentError("r", "1 <= r <= min(n,p) = " + std::to_string(kmax),
                          "got " + std::to_string(r));
    ThinSvd svd = thin_svd(m, r);
    out.loadings = std::move(svd.right);
    out.spectrum = svd.singular_values;
    out.variances = svd.singular_values.array().square();
    return out;
  }

  const Eigen::Index p = m.rows();
  if (r < 1 || r > p)
    throw ArgumentError("r", "1 <= r <= p = " + std::to_string(p), "got " + std::to_string(r));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) throw InputError("eigendecomposition failed");
  const Vector& values = eig.eigenvalues();  // ascending
  const double top = values(p - 1);
  if (values(0) < -kCovarianceTolerance * std::max(1.0, top))
    throw InputError("covariance matrix is indefinite (smallest eigenvalue " +
                     std::to_string(values(0)) + ")");
  out.loadings = eig.eigenvectors().rowwise().reverse().leftCols(r);
  out.spectrum = values.reverse().head(r);
  out.variances = out.spectrum;
  canonicalize_signs(out.loadings);
  return out;
}

}  // namespace spcart
