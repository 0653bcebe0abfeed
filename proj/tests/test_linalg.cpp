#include <random>

#include "doctest.h"
#include "spcart/errors.hpp"
#include "spcart/linalg.hpp"
#include "spcart/matrix_input.hpp"

using namespace spcart;

namespace {

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

}  // namespace

TEST_CASE("thin SVD reconstructs and has canonical signs") {
  const Matrix a = gaussian(30, 8, 1);
  const ThinSvd s = thin_svd(a, 8);
  CHECK((s.left * s.singular_values.asDiagonal() * s.right.transpose() - a).norm() <
        1e-10 * a.norm());
  for (Eigen::Index j = 0; j < 8; ++j) {
    Eigen::Index idx;
    s.right.col(j).cwiseAbs().maxCoeff(&idx);
    CHECK(s.right(idx, j) > 0);
  }
  for (Eigen::Index j = 1; j < 8; ++j) CHECK(s.singular_values(j) <= s.singular_values(j - 1));
}

TEST_CASE("polar factor is orthonormal and closest") {
  const Matrix b = gaussian(6, 4, 2);
  const Matrix w = polar(b);
  CHECK((w.transpose() * w - Matrix::Identity(4, 4)).norm() < 1e-12);
  // WᵀB is the symmetric positive factor.
  const Matrix s = w.transpose() * b;
  CHECK((s - s.transpose()).norm() < 1e-12);
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(s).eigenvalues().minCoeff() > 0);
  // Procrustes: tr(WᵀB) beats random orthonormal candidates.
  for (int t = 0; t < 20; ++t) {
    const Matrix q = Eigen::HouseholderQR<Matrix>(gaussian(6, 4, 100 + t))
                         .householderQ() *
                     Matrix::Identity(6, 4);
    CHECK((q.transpose() * b).trace() <= s.trace() + 1e-12);
  }
}

TEST_CASE("polar rejects wide and rank-deficient inputs") {
  CHECK_THROWS_AS(polar(gaussian(3, 4, 3)), ArgumentError);
  Matrix b = gaussian(4, 3, 4);
  b.col(2) = b.col(0);
  CHECK_THROWS_AS(polar(b), DegeneracyError);
}

TEST_CASE("orthonormal span keeps the numerical rank") {
  Matrix x = gaussian(10, 4, 5);
  x.col(3) = x.col(0) + x.col(1);
  const Matrix q = orthonormal_span(x);
  CHECK(q.cols() == 3);
  CHECK((q * q.transpose() * x - x).norm() < 1e-10);
  CHECK_THROWS_AS(orthonormal_span(Matrix::Zero(4, 2)), DegeneracyError);
}

TEST_CASE("centering") {
  const Matrix a = gaussian(20, 3, 6).array() + 5.0;
  const CenteredData c = center_columns(a);
  CHECK(c.matrix.colwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(c.column_means(0) == doctest::Approx(a.col(0).mean()));
  CHECK_THROWS_AS(center_columns(Matrix::Ones(1, 3)), ArgumentError);
}

TEST_CASE("PCA loadings agree between data and covariance input") {
  const Matrix a = center_columns(gaussian(50, 6, 7)).matrix;
  const PcaBasis d = pca_loadings(MatrixInput::data(a), 3);
  const PcaBasis c = pca_loadings(MatrixInput::covariance(a.transpose() * a), 3);
  CHECK((d.loadings - c.loadings).norm() < 1e-8);
  CHECK((d.variances - c.variances).norm() < 1e-8 * d.variances.norm());
  CHECK_THROWS_AS(pca_loadings(MatrixInput::data(a), 7), ArgumentError);
}

TEST_CASE("matrix input validation") {
  Matrix c = Matrix::Identity(3, 3);
  c(0, 1) = 0.5;
  CHECK_THROWS_AS(MatrixInput::covariance(c), InputError);
  CHECK_THROWS_AS(MatrixInput::covariance(Matrix::Ones(2, 3)), InputError);
  Matrix bad = Matrix::Ones(3, 2);
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(MatrixInput::data(bad), InputError);
  CHECK_THROWS_AS(MatrixInput::data(Matrix(0, 0)), InputError);

  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1;
  CHECK_THROWS_AS(pca_loadings(MatrixInput::covariance(indefinite), 1), InputError);
}

TEST_CASE("gram products avoid forming the gram matrix but agree with it") {
  const Matrix a = gaussian(9, 4, 8);
  const MatrixInput in = MatrixInput::data(a);
  const Vector x = Vector::LinSpaced(4, -1, 1);
  CHECK((in.apply_gram(x) - a.transpose() * a * x).norm() < 1e-12);
  CHECK(in.total_variance() == doctest::Approx(a.squaredNorm()));
}
