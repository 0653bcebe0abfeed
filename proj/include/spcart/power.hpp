#pragma once

#include "spcart/fit_report.hpp"
#include "spcart/truncation.hpp"

namespace spcart {

struct PowerConfig {
  enum class Mode { Deflation, Block };

  Eigen::Index r = 1;
  TruncationSpec truncation;
  // Threshold z/‖z‖ rather than z itself. With adaptive = false the
  // threshold is applied to the raw iterate, which is how the original
  // GPower/GPowerB set one λ for every loading.
  bool adaptive = true;
  Mode mode = Mode::Deflation;
  int max_iterations = 200;
  double rel_change_tol = 0.01;
  bool record_trace = false;

  void validate(const MatrixInput& input) const;
};

/// rSVD-GP, one loading at a time. Each loading starts at the coordinate of
/// the largest column norm (or diagonal entry), iterates
/// x ← T(Gx/‖Gx‖)/‖·‖ and is then deflated out of A or C.
FitReport rsvd_gp_fit(const MatrixInput& input, const PowerConfig& config);

/// rSVD-GPB on a data matrix: Z = AᵀY, Xᵢ = ‖Zᵢ‖·T(Zᵢ/‖Zᵢ‖), Y = Polar(AX),
/// starting from the left singular vectors of A.
FitReport rsvd_gpb_fit(const MatrixInput& data, const PowerConfig& config);

/// Dispatches on config.mode.
FitReport power_fit(const MatrixInput& input, const PowerConfig& config);

/// One truncated power step x' ∝ P(Cx) that keeps the `cardinality` largest
/// magnitudes of Cx (TPower's k, so T-sp with λ = p − k). Throws
/// DegeneracyError if the result is zero.
Vector tpower_step(const Matrix& c, const Vector& x, Eigen::Index cardinality);

}  // namespace spcart
