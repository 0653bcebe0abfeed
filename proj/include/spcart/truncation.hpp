#pragma once

#include <string>
#include <string_view>

#include "spcart/matrix_input.hpp"

namespace spcart {

enum class TruncationKind {
  HardThreshold,  // T-l0, H_λ
  SoftThreshold,  // T-l1, S_λ
  BySparsity,     // T-sp, P_λ
  ByEnergy,       // T-en, E_λ
};

std::string_view to_string(TruncationKind kind);
/// Accepts "l0", "l1", "sp", "en".
TruncationKind parse_truncation_kind(std::string_view token);

struct TruncationSpec {
  TruncationKind kind = TruncationKind::HardThreshold;
  double lambda = 0.0;

  /// Throws ArgumentError if λ is outside the kind's domain for dimension p:
  /// [0,1) for thresholds and T-en, integer in [0, p-1] for T-sp.
  void validate(Eigen::Index p) const;
  std::string domain(Eigen::Index p) const;
};

/// Outcome of truncating one unit vector z into x = T(z)/‖T(z)‖.
struct TruncationResult {
  Vector vector;               // unit, or all zeros when `zero` is set
  bool zero = false;           // every entry was truncated
  double truncated_energy = 0; // ‖z̄‖² over the zeroed entries
  Eigen::Index cardinality = 0;
  double deviation_sin = 0;    // sin θ(x, z); 1 when zero
};

/// The raw entry-wise operators, applied to any vector with no normalization.
/// T-sp and T-en zero the smallest magnitudes, lower index first on ties.
Vector apply_hard(const Vector& z, double threshold);
Vector apply_soft(const Vector& z, double threshold);
Vector apply_sparsity(const Vector& z, Eigen::Index count);
Vector apply_energy(const Vector& z, double fraction);
Vector apply_operator(const Vector& z, TruncationKind kind, double lambda);

TruncationResult soft_threshold(const Vector& z, double lambda);
TruncationResult hard_threshold(const Vector& z, double lambda);
TruncationResult truncate_by_sparsity(const Vector& z, Eigen::Index lambda);
TruncationResult truncate_by_energy(const Vector& z, double lambda);
TruncationResult truncate(const Vector& z, const TruncationSpec& spec);

/// ‖z‖ = 1 within this tolerance is required of the normalized operators.
inline constexpr double kUnitTolerance = 1e-8;

}  // namespace spcart
