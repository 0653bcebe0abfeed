#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spcart/fit_report.hpp"
#include "spcart/truncation.hpp"

namespace spcart {

inline constexpr double kBoundSlack = 1e-9;

struct Interval {
  double lo = 0;
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double value) const {
    return value >= lo - kBoundSlack && value <= hi + kBoundSlack;
  }
};

struct BoundContext {
  double lambda = 0;
  Eigen::Index p = 0;
  Eigen::Index r = 0;
  std::optional<TruncationKind> kind;
};

struct BoundReport {
  std::string name;
  Interval theoretical;
  double empirical = 0;
  bool satisfied = false;
  BoundContext context;
  bool applicable = true;     // hypotheses of the result hold
  bool vacuous = false;       // theoretical bound carries no information
  bool informational = false; // a rule of thumb, not a theorem
  std::string note;
};

BoundReport make_report(std::string name, Interval theoretical, double empirical,
                        BoundContext context);

/// Upper bound on |cos θ(Xᵢ, Xⱼ)| given the deviations of Xᵢ and Xⱼ from
/// their orthogonal sources: sin(θ₁+θ₂) while θ₁+θ₂ ≤ π/2, else 1.
double nonortho_bound(double theta1, double theta2);

struct VectorBounds {
  Interval sparsity;
  Interval deviation;  // on sin θ
};

VectorBounds tl0_bounds(double lambda, Eigen::Index p);
/// Relative bounds on sin θ for soft thresholding. The upper end is open.
Interval tl1_deviation_bounds(double truncated_energy, double lambda, Eigen::Index cardinality);
VectorBounds tsp_bounds(Eigen::Index lambda, Eigen::Index p);
VectorBounds ten_bounds(double lambda, Eigen::Index p);

/// Absolute sparsity/deviation bounds for any truncation kind; T-l1 shares
/// the T-l0 sparsity bounds and only the trivial deviation range [0, 1].
VectorBounds absolute_bounds(const TruncationSpec& spec, Eigen::Index p);

/// d_min²·EV(V) ≤ EV(X), with d_min the smallest singular value of XᵀV.
/// `v` must be the rank-r PCA loadings of `input`.
BoundReport ev_dmin_bound(const MatrixInput& input, const Matrix& x, const Matrix& v);

/// (cos²θ − √(r−1)·sin 2θ)·EV(V). Negative values are returned as is.
double ev_cos_bound(double theta, Eigen::Index r, double ev_v);

/// Hypotheses of the cosine bound for a converged fit, and its check.
struct CosBoundCheck {
  bool applicable = false;
  double theta = 0;          // max deviation angle
  double theta_spread = 0;   // max − min deviation angle
  double max_row_energy = 0; // max_i Σⱼ C²ᵢⱼ with C = ZᵀX
  BoundReport report;
};

inline constexpr double kUniformDeviationTolerance = 0.02;

CosBoundCheck check_ev_cos_bound(const MatrixInput& input, const FitReport& fit,
                                 const TruncationSpec& spec);

/// Every applicable bound for an SPCArt-style fit (Z = V·Rᵀ is known):
/// per-column sparsity and deviation, pairwise nonorthogonality, EVdmin,
/// EVcos, and for T-en the coarse (1−λ)·EV(V) guide.
std::vector<BoundReport> verify_fit(const MatrixInput& input, const FitReport& fit,
                                    const TruncationSpec& spec);

/// Monte-Carlo containment over random unit vectors at one (kind, λ, p).
struct ContainmentSummary {
  int trials = 0;
  int sparsity_violations = 0;
  int deviation_violations = 0;
  int relative_violations = 0;  // T-l1 relative bounds and soft ≥ hard
  double max_deviation = 0;
  double min_sparsity = 1;
};

ContainmentSummary truncation_containment(const TruncationSpec& spec, Eigen::Index p,
                                          int trials, std::uint64_t seed);

/// Monte-Carlo check of ev_dmin_bound over random unit-column X.
struct DminContainment {
  int trials = 0;
  int violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();  // EV(X) − bound, normalized
};

DminContainment ev_dmin_containment(const MatrixInput& input, Eigen::Index r, int trials,
                                    std::uint64_t seed);

}  // namespace spcart
