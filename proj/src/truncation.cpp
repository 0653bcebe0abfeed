#include "spcart/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "spcart/errors.hpp"

namespace spcart {

std::string_view to_string(TruncationKind kind) {
  switch (kind) {
    case TruncationKind::HardThreshold: return "l0";
    case TruncationKind::SoftThreshold: return "l1";
    case TruncationKind::BySparsity: return "sp";
    case TruncationKind::ByEnergy: return "en";
  }
  return "?";
}

TruncationKind parse_truncation_kind(std::string_view token) {
  if (token == "l0") return TruncationKind::HardThreshold;
  if (token == "l1") return TruncationKind::SoftThreshold;
  if (token == "sp") return TruncationKind::BySparsity;
  if (token == "en") return TruncationKind::ByEnergy;
  throw ArgumentError("--trunc", "one of l0, l1, sp, en",
                      "unknown truncation '" + std::string(token) + "'");
}

std::string TruncationSpec::domain(Eigen::Index p) const {
  if (kind == TruncationKind::BySparsity)
    return "integer in [0, " + std::to_string(p - 1) + "]";
  return "[0, 1)";
}

void TruncationSpec::validate(Eigen::Index p) const {
  const bool ok = [&] {
    if (!std::isfinite(lambda)) return false;
    if (kind == TruncationKind::BySparsity)
      return lambda >= 0.0 && lambda <= static_cast<double>(p - 1) &&
             lambda == std::floor(lambda);
    return lambda >= 0.0 && lambda < 1.0;
  }();
  if (!ok)
    throw ArgumentError("lambda", domain(p),
                        "value " + std::to_string(lambda) + " invalid for T-" +
                            std::string(to_string(kind)));
}

namespace {

// Indices sorted by ascending |z|, lower index first among equals.
std::vector<Eigen::Index> ascending_order(const Vector& z) {
  std::vector<Eigen::Index> order(static_cast<size_t>(z.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(z(a)) < std::abs(z(b));
  });
  return order;
}

void require_unit(const Vector& z) {
  const double n = z.norm();
  if (!(std::abs(n - 1.0) <= kUnitTolerance))
    throw ArgumentError("z", "unit vector (|‖z‖ - 1| <= 1e-8)",
                        "norm is " + std::to_string(n));
}

void require_threshold(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw ArgumentError("lambda", "[0, 1)", "got " + std::to_string(lambda));
}

// Build the normalized result from z and its unnormalized truncation t.
// `survivors_exact` means surviving entries equal z's, so sin θ = ‖z̄‖/‖z‖.
TruncationResult finish(const Vector& z, Vector t, bool survivors_exact) {
  TruncationResult out;
  double removed = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (t(i) == 0.0)
      removed += z(i) * z(i);
    else
      ++out.cardinality;
  }
  out.truncated_energy = removed;
  const double tn = t.norm();
  if (out.cardinality == 0 || !(tn > 0.0)) {
    out.zero = true;
    out.vector = Vector::Zero(z.size());
    out.cardinality = 0;
    out.deviation_sin = 1.0;
    return out;
  }
  out.vector = t / tn;
  const double zn = z.norm();
  if (survivors_exact) {
    out.deviation_sin = std::min(1.0, std::sqrt(removed) / zn);
  } else {
    const Vector residual = z - z.dot(out.vector) * out.vector;
    out.deviation_sin = std::min(1.0, residual.norm() / zn);
  }
  return out;
}

}  // namespace

Vector apply_hard(const Vector& z, double threshold) {
  return z.unaryExpr([threshold](double v) { return std::abs(v) <= threshold ? 0.0 : v; });
}

Vector apply_soft(const Vector& z, double threshold) {
  return z.unaryExpr([threshold](double v) {
    const double shrunk = std::abs(v) - threshold;
    return shrunk > 0.0 ? std::copysign(shrunk, v) : 0.0;
  });
}

Vector apply_sparsity(const Vector& z, Eigen::Index count) {
  if (count < 0 || count > z.size())
    throw ArgumentError("lambda", "integer in [0, p]", "got " + std::to_string(count));
  Vector out = z;
  const auto order = ascending_order(z);
  for (Eigen::Index i = 0; i < count; ++i) out(order[static_cast<size_t>(i)]) = 0.0;
  return out;
}

Vector apply_energy(const Vector& z, double fraction) {
  Vector out = z;
  const double total = z.squaredNorm();
  if (!(total > 0.0)) return out;
  // Slack keeps exact-arithmetic boundary cases (λp integer on uniform
  // vectors) from being lost to rounding in the running sum.
  const double budget = fraction * total + 1e-12 * total;
  double cumulative = 0.0;
  for (Eigen::Index idx : ascending_order(z)) {
    cumulative += z(idx) * z(idx);
    if (cumulative > budget) break;
    out(idx) = 0.0;
  }
  return out;
}

Vector apply_operator(const Vector& z, TruncationKind kind, double lambda) {
  switch (kind) {
    case TruncationKind::HardThreshold: return apply_hard(z, lambda);
    case TruncationKind::SoftThreshold: return apply_soft(z, lambda);
    case TruncationKind::BySparsity: return apply_sparsity(z, static_cast<Eigen::Index>(lambda));
    case TruncationKind::ByEnergy: return apply_energy(z, lambda);
  }
  return z;
}

TruncationResult soft_threshold(const Vector& z, double lambda) {
  require_unit(z);
  require_threshold(lambda);
  return finish(z, apply_soft(z, lambda), lambda == 0.0);
}

TruncationResult hard_threshold(const Vector& z, double lambda) {
  require_unit(z);
  require_threshold(lambda);
  return finish(z, apply_hard(z, lambda), true);
}

TruncationResult truncate_by_sparsity(const Vector& z, Eigen::Index lambda) {
  require_unit(z);
  if (lambda < 0 || lambda > z.size() - 1)
    throw ArgumentError("lambda", "integer in [0, " + std::to_string(z.size() - 1) + "]",
                        "got " + std::to_string(lambda));
  return finish(z, apply_sparsity(z, lambda), true);
}

TruncationResult truncate_by_energy(const Vector& z, double lambda) {
  require_unit(z);
  require_threshold(lambda);
  return finish(z, apply_energy(z, lambda), true);
}

TruncationResult truncate(const Vector& z, const TruncationSpec& spec) {
  switch (spec.kind) {
    case TruncationKind::HardThreshold: return hard_threshold(z, spec.lambda);
    case TruncationKind::SoftThreshold: return soft_threshold(z, spec.lambda);
    case TruncationKind::BySparsity:
      return truncate_by_sparsity(z, static_cast<Eigen::Index>(spec.lambda));
    case TruncationKind::ByEnergy: return truncate_by_energy(z, spec.lambda);
  }
  return {};
}

}  // namespace spcart
