#include "spcart/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "spcart/errors.hpp"
#include "spcart/metrics.hpp"

namespace spcart {

BoundReport make_report(std::string name, Interval theoretical, double empirical,
                        BoundContext context) {
  BoundReport r;
  r.name = std::move(name);
  r.theoretical = theoretical;
  r.empirical = empirical;
  r.satisfied = theoretical.contains(empirical);
  r.context = context;
  return r;
}

double nonortho_bound(double theta1, double theta2) {
  const double sum = theta1 + theta2;
  if (sum <= std::numbers::pi / 2.0) return std::sin(sum);
  return 1.0;
}

VectorBounds tl0_bounds(double lambda, Eigen::Index p) {
  const double pd = static_cast<double>(p);
  if (lambda < 1.0 / std::sqrt(pd))
    return {{0.0, 1.0 - 1.0 / pd}, {0.0, std::sqrt(pd - 1.0) * lambda}};
  return {{1.0 - 1.0 / (pd * lambda * lambda), 1.0}, {0.0, 1.0}};
}

Interval tl1_deviation_bounds(double truncated_energy, double lambda, Eigen::Index cardinality) {
  return {std::sqrt(truncated_energy),
          std::sqrt(truncated_energy + lambda * lambda * static_cast<double>(cardinality))};
}

VectorBounds tsp_bounds(Eigen::Index lambda, Eigen::Index p) {
  const double pd = static_cast<double>(p);
  const double l = static_cast<double>(lambda);
  return {{l / pd, 1.0 - 1.0 / pd}, {0.0, std::sqrt(l / pd)}};
}

VectorBounds ten_bounds(double lambda, Eigen::Index p) {
  const double pd = static_cast<double>(p);
  return {{std::floor(lambda * pd) / pd, 1.0 - 1.0 / pd}, {0.0, std::sqrt(lambda)}};
}

VectorBounds absolute_bounds(const TruncationSpec& spec, Eigen::Index p) {
  switch (spec.kind) {
    case TruncationKind::HardThreshold: return tl0_bounds(spec.lambda, p);
    case TruncationKind::SoftThreshold: {
      VectorBounds b = tl0_bounds(spec.lambda, p);
      b.deviation = {0.0, 1.0};
      return b;
    }
    case TruncationKind::BySparsity:
      return tsp_bounds(static_cast<Eigen::Index>(spec.lambda), p);
    case TruncationKind::ByEnergy: return ten_bounds(spec.lambda, p);
  }
  return {};
}

BoundReport ev_dmin_bound(const MatrixInput& input, const Matrix& x, const Matrix& v) {
  if (x.rows() != v.rows() || x.cols() != v.cols())
    throw ArgumentError("X", "same shape as V (" + std::to_string(v.rows()) + "x" +
                                 std::to_string(v.cols()) + ")",
                        "dimension mismatch");
  const Matrix cross = x.transpose() * v;
  Eigen::JacobiSVD<Matrix> svd(cross);
  const double dmin = svd.singularValues().minCoeff();
  const double ev_v = explained_variance(input, v);
  BoundReport r = make_report("ev_dmin", {dmin * dmin * ev_v, std::numeric_limits<double>::infinity()},
                              explained_variance(input, x),
                              {0.0, v.rows(), v.cols(), std::nullopt});
  r.vacuous = dmin * dmin * ev_v <= 0.0;
  r.note = "d_min=" + std::to_string(dmin);
  return r;
}

double ev_cos_bound(double theta, Eigen::Index r, double ev_v) {
  const double c = std::cos(theta);
  return (c * c - std::sqrt(static_cast<double>(r - 1)) * std::sin(2.0 * theta)) * ev_v;
}

namespace {

struct RotatedPair {
  Matrix z;
  Matrix x;
  Vector theta;
};

RotatedPair rotated_pair(const FitReport& fit) {
  if (!fit.rotation || fit.pca.loadings.size() == 0)
    throw ArgumentError("fit", "a rotation-based fit (SPCArt or simple thresholding)",
                        "fit carries no rotation/PCA basis");
  RotatedPair pair{fit.pca.loadings * fit.rotation->transpose(), fit.loadings,
                   Vector(fit.loadings.cols())};
  for (Eigen::Index i = 0; i < pair.x.cols(); ++i)
    pair.theta(i) = deviation_angle(pair.x.col(i), pair.z.col(i));
  return pair;
}

}  // namespace

CosBoundCheck check_ev_cos_bound(const MatrixInput& input, const FitReport& fit,
                                 const TruncationSpec& spec) {
  const RotatedPair pair = rotated_pair(fit);
  const Eigen::Index r = pair.x.cols();
  CosBoundCheck check;
  check.theta = pair.theta.maxCoeff();
  check.theta_spread = check.theta - pair.theta.minCoeff();
  const Matrix c = pair.z.transpose() * pair.x;
  check.max_row_energy = c.rowwise().squaredNorm().maxCoeff();
  check.applicable = fit.converged && check.theta_spread <= kUniformDeviationTolerance &&
                     check.max_row_energy <= 1.0 + kBoundSlack;

  const double ev_v = explained_variance(input, fit.pca.loadings);
  const double bound = ev_cos_bound(check.theta, r, ev_v);
  check.report = make_report("ev_cos", {bound, std::numeric_limits<double>::infinity()},
                             explained_variance(input, pair.x),
                             {spec.lambda, pair.x.rows(), r, spec.kind});
  check.report.applicable = check.applicable;
  check.report.vacuous = bound < 0.0;
  check.report.note = "theta=" + std::to_string(check.theta) +
                      " spread=" + std::to_string(check.theta_spread) +
                      " max_row_energy=" + std::to_string(check.max_row_energy) +
                      (fit.converged ? "" : " (fit not converged)");
  return check;
}

std::vector<BoundReport> verify_fit(const MatrixInput& input, const FitReport& fit,
                                    const TruncationSpec& spec) {
  const RotatedPair pair = rotated_pair(fit);
  const Eigen::Index p = pair.x.rows();
  const Eigen::Index r = pair.x.cols();
  const BoundContext ctx{spec.lambda, p, r, spec.kind};
  const VectorBounds abs = absolute_bounds(spec, p);
  std::vector<BoundReport> out;

  for (Eigen::Index i = 0; i < r; ++i) {
    const Vector x = pair.x.col(i);
    const Vector z = pair.z.col(i);
    const bool fallback = (x - z).cwiseAbs().maxCoeff() == 0.0;
    const std::string col = "[" + std::to_string(i) + "]";
    BoundReport s = make_report("sparsity" + col, abs.sparsity, sparsity(x), ctx);
    BoundReport d = make_report("deviation" + col, abs.deviation, std::sin(pair.theta(i)), ctx);
    if (fallback && spec.lambda > 0.0) {
      s.note = d.note = "column kept untruncated (truncation was zero)";
    }
    out.push_back(std::move(s));
    out.push_back(std::move(d));
    if (spec.kind == TruncationKind::SoftThreshold) {
      double removed = 0.0;
      for (Eigen::Index k = 0; k < p; ++k)
        if (std::abs(x(k)) <= kZeroTolerance) removed += z(k) * z(k);
      out.push_back(make_report("deviation_relative" + col,
                                tl1_deviation_bounds(removed, spec.lambda, cardinality(x)),
                                std::sin(pair.theta(i)), ctx));
    }
  }

  if (r >= 2) {
    const Nonorthogonality nor = nonorthogonality(pair.x);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = i + 1; j < r; ++j)
        out.push_back(make_report(
            "nonortho[" + std::to_string(i) + "," + std::to_string(j) + "]",
            {0.0, nonortho_bound(pair.theta(i), pair.theta(j))}, nor.abs_cos(i, j), ctx));
  }

  BoundReport dmin = ev_dmin_bound(input, pair.x, fit.pca.loadings);
  dmin.context = ctx;
  out.push_back(std::move(dmin));
  out.push_back(check_ev_cos_bound(input, fit, spec).report);

  if (spec.kind == TruncationKind::ByEnergy) {
    const double ev_v = explained_variance(input, fit.pca.loadings);
    BoundReport guide = make_report("ev_coarse", {(1.0 - spec.lambda) * ev_v,
                                                  std::numeric_limits<double>::infinity()},
                                    explained_variance(input, pair.x), ctx);
    guide.informational = true;
    guide.note = "(1-lambda)*EV(V) guide for small-lambda T-en";
    out.push_back(std::move(guide));
  }
  return out;
}

ContainmentSummary truncation_containment(const TruncationSpec& spec, Eigen::Index p,
                                          int trials, std::uint64_t seed) {
  spec.validate(p);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const VectorBounds abs = absolute_bounds(spec, p);
  ContainmentSummary s;
  for (int t = 0; t < trials; ++t) {
    Vector z(p);
    for (Eigen::Index i = 0; i < p; ++i) z(i) = normal(rng);
    z.normalize();
    const TruncationResult res = truncate(z, spec);
    const double sp = sparsity(res.vector);
    const double dev = std::sin(deviation_angle(res.vector, z));
    ++s.trials;
    s.max_deviation = std::max(s.max_deviation, dev);
    s.min_sparsity = std::min(s.min_sparsity, sp);
    if (!abs.sparsity.contains(sp)) ++s.sparsity_violations;
    if (!abs.deviation.contains(dev)) ++s.deviation_violations;
    if (spec.kind == TruncationKind::SoftThreshold) {
      const Interval rel =
          tl1_deviation_bounds(res.truncated_energy, spec.lambda, res.cardinality);
      const TruncationResult hard = hard_threshold(z, spec.lambda);
      const double hard_dev = std::sin(deviation_angle(hard.vector, z));
      if (!rel.contains(dev) || dev < hard_dev - kBoundSlack) ++s.relative_violations;
    }
  }
  return s;
}

DminContainment ev_dmin_containment(const MatrixInput& input, Eigen::Index r, int trials,
                                    std::uint64_t seed) {
  const PcaBasis pca = pca_loadings(input, r);
  const Eigen::Index p = input.variables();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  DminContainment out;
  const double total = input.total_variance();
  for (int t = 0; t < trials; ++t) {
    Matrix x(p, r);
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index i = 0; i < p; ++i) x(i, j) = normal(rng);
    x.colwise().normalize();
    const BoundReport rep = ev_dmin_bound(input, x, pca.loadings);
    ++out.trials;
    if (!rep.satisfied) ++out.violations;
    out.min_margin = std::min(out.min_margin, (rep.empirical - rep.theoretical.lo) / total);
  }
  return out;
}

}  // namespace spcart
