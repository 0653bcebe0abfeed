#pragma once

#include <cstdint>

#include "spcart/fit_report.hpp"
#include "spcart/truncation.hpp"

namespace spcart {

struct SpcartConfig {
  Eigen::Index r = 1;
  TruncationSpec truncation;
  int max_iterations = 200;
  double rel_change_tol = 0.01;
  bool record_trace = false;
  // Extra fits from random rotations; the lowest final objective wins.
  int random_restarts = 0;
  std::uint64_t seed = 0;

  void validate(Eigen::Index p) const;
};

/// Sparse loadings by alternating rotation Z = V·Rᵀ, column truncation
/// Xᵢ = T(Zᵢ)/‖T(Zᵢ)‖ and the Procrustes update R = Polar(XᵀV), starting
/// from R = I.
FitReport spcart_fit(const MatrixInput& input, const SpcartConfig& config);

/// Hard-threshold the PCA loadings once: the first SPCArt(T-l0) iterate.
Matrix simple_thresholding(const MatrixInput& input, Eigen::Index r, double lambda);

/// Column-wise truncation used by both of the above. Columns that truncate
/// to zero keep the untruncated Zᵢ; their indices are appended to
/// `zero_columns` when given.
Matrix truncate_columns(const Matrix& z, const TruncationSpec& spec,
                        double* truncated_energy_mean = nullptr,
                        std::vector<Eigen::Index>* zero_columns = nullptr);

/// ‖V − XR‖²_F plus the kind's penalty: λΣ‖Xᵢ‖₁ (halving the fit term) for
/// T-l1, λ²‖X‖₀ for T-l0, none for T-sp and T-en.
double spcart_objective(const Matrix& v, const Matrix& x, const Matrix& rotation,
                        const TruncationSpec& spec);

}  // namespace spcart
