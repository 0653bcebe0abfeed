#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spcart/linalg.hpp"
#include "spcart/metrics.hpp"

namespace spcart {

/// One iteration of a solver. Fields marked optional are filled only when
/// the config asks for a full trace.
struct IterationRecord {
  Eigen::Index loading = 0;  // deflation solvers: which loading; block solvers: 0
  double rel_change = 0;     // ‖X⁽ᵗ⁾ − X⁽ᵗ⁻¹⁾‖_F/√r after sign alignment
  double truncated_energy_mean = 0;
  double objective = 0;
  std::optional<double> sp;
  std::optional<double> cpev;
  std::optional<double> nor;
  std::optional<Matrix> loadings;  // the iterate X⁽ᵗ⁾
  std::optional<Matrix> factor;    // rotation R (SPCArt) or Y (block power)
};

struct FitReport {
  Matrix loadings;                 // p×r, unit columns
  std::optional<Matrix> rotation;  // SPCArt: R with X = T(V·Rᵀ)
  PcaBasis pca;                    // the PCA basis the fit started from (if any)
  Eigen::Index iterations = 0;
  bool converged = false;
  std::vector<Eigen::Index> per_loading_iterations;  // deflation only
  std::vector<IterationRecord> trace;
  MetricsSnapshot final_metrics;
  std::vector<std::string> warnings;
};

/// ‖X − Xprev·S‖_F/√r where S flips each previous column toward X.
double aligned_relative_change(const Matrix& x, const Matrix& previous);

}  // namespace spcart
