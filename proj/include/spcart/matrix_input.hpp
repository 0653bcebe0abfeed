#pragma once

#include <Eigen/Dense>

namespace spcart {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Either an n×p data matrix (samples in rows) or a p×p covariance matrix.
/// Every solver takes one of these; data matrices are used as given, so
/// center them first if that is what you want.
class MatrixInput {
 public:
  enum class Kind { Data, Covariance };

  static MatrixInput data(Matrix a);
  static MatrixInput covariance(Matrix c);

  Kind kind() const noexcept { return kind_; }
  bool is_data() const noexcept { return kind_ == Kind::Data; }
  const Matrix& matrix() const noexcept { return matrix_; }

  /// Number of variables p.
  Eigen::Index variables() const noexcept { return matrix_.cols(); }

  /// AᵀA for data input, C for covariance input.
  Matrix gram() const;

  /// tr(AᵀA) or tr(C).
  double total_variance() const;

  /// G·x without forming G when the input is data.
  Vector apply_gram(const Vector& x) const;

 private:
  MatrixInput(Kind kind, Matrix m) : kind_(kind), matrix_(std::move(m)) {}

  Kind kind_;
  Matrix matrix_;
};

}  // namespace spcart
