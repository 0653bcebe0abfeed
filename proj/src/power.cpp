#include "spcart/power.hpp"

#include <cmath>
#include <string>

#include "spcart/errors.hpp"

namespace spcart {

void PowerConfig::validate(const MatrixInput& input) const {
  const Eigen::Index p = input.variables();
  if (r < 1 || r > p)
    throw ArgumentError("r", "1 <= r <= p = " + std::to_string(p), "got " + std::to_string(r));
  if (max_iterations < 1)
    throw ArgumentError("max_iterations", ">= 1", "got " + std::to_string(max_iterations));
  if (!(rel_change_tol > 0.0))
    throw ArgumentError("rel_change_tol", "> 0", "got " + std::to_string(rel_change_tol));
  if (mode == Mode::Block) {
    if (!input.is_data())
      throw ArgumentError("input", "data matrix", "block mode operates on a data matrix");
    const Eigen::Index kmax = std::min(input.matrix().rows(), p);
    if (r > kmax)
      throw ArgumentError("r", "1 <= r <= min(n,p) = " + std::to_string(kmax),
                          "got " + std::to_string(r));
  }
  if (adaptive || truncation.kind == TruncationKind::BySparsity ||
      truncation.kind == TruncationKind::ByEnergy) {
    truncation.validate(p);
  } else if (!(truncation.lambda >= 0.0) || !std::isfinite(truncation.lambda)) {
    // Raw thresholds act on unnormalized iterates, so only λ >= 0 is required.
    throw ArgumentError("lambda", "[0, inf) for raw thresholds",
                        "got " + std::to_string(truncation.lambda));
  }
}

namespace {

Eigen::Index argmax_lowest(const Vector& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = i;
  return best;
}

// Unnormalized truncation of one iterate. Returns the zero vector when every
// entry is removed.
Vector truncate_iterate(const Vector& z, const PowerConfig& config) {
  const double n = z.norm();
  const TruncationSpec& spec = config.truncation;
  if (config.adaptive) return n * apply_operator(z / n, spec.kind, spec.lambda);
  return apply_operator(z, spec.kind, spec.lambda);
}

double removed_energy(const Vector& z, const Vector& t) {
  double removed = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    if (t(i) == 0.0) removed += z(i) * z(i);
  return removed / z.squaredNorm();
}

}  // namespace

FitReport rsvd_gp_fit(const MatrixInput& input, const PowerConfig& config) {
  config.validate(input);
  const Eigen::Index p = input.variables();
  const Eigen::Index r = config.r;
  const bool data_mode = input.is_data();
  Matrix work = input.matrix();
  // Iterates smaller than this, relative to the undeflated operator, mean
  // the deflated operator has run out of rank.
  const double floor = kRankTolerance * (data_mode ? work.colwise().squaredNorm().maxCoeff()
                                                   : work.diagonal().cwiseAbs().maxCoeff());

  FitReport report;
  report.loadings.resize(p, r);
  report.converged = true;

  for (Eigen::Index i = 0; i < r; ++i) {
    const Vector scale = data_mode ? Vector(work.colwise().squaredNorm().transpose())
                                   : Vector(work.diagonal());
    Vector x = Vector::Unit(p, argmax_lowest(scale));
    int zero_hits = 0;
    bool converged = false;
    int t = 0;
    while (t < config.max_iterations) {
      ++t;
      const Vector z = data_mode ? Vector(work.transpose() * (work * x)) : Vector(work * x);
      const double zn = z.norm();
      if (!(zn > floor))
        throw DegeneracyError("rsvd_gp: deflated operator annihilates loading " +
                                  std::to_string(i) + " (r exceeds the rank?)",
                              zn);
      Vector next = truncate_iterate(z, config);
      const double nn = next.norm();
      if (!(nn > 0.0)) {
        ++zero_hits;
        next = z / zn;
      } else {
        next /= nn;
      }
      IterationRecord rec;
      rec.loading = i;
      rec.rel_change = aligned_relative_change(next, x);
      rec.truncated_energy_mean = nn > 0.0 ? removed_energy(z, next) : 0.0;
      rec.objective = x.dot(data_mode ? Vector(work.transpose() * (work * next))
                                      : Vector(work * next));
      if (config.record_trace) {
        rec.sp = sparsity(next);
        rec.loadings = next;
      }
      report.trace.push_back(std::move(rec));
      x = std::move(next);
      if (report.trace.back().rel_change < config.rel_change_tol) {
        converged = true;
        break;
      }
    }
    if (zero_hits > 0)
      report.warnings.push_back("loading " + std::to_string(i) + ": truncation removed every entry in " +
                                std::to_string(zero_hits) +
                                " iteration(s); untruncated iterate kept");
    report.per_loading_iterations.push_back(t);
    report.iterations += t;
    report.converged = report.converged && converged;
    report.loadings.col(i) = x;

    if (data_mode) {
      work -= (work * x) * x.transpose();
    } else {
      const Matrix proj = Matrix::Identity(p, p) - x * x.transpose();
      work = proj * work * proj;
    }
  }
  report.final_metrics = compute_metrics(input, report.loadings);
  return report;
}

FitReport rsvd_gpb_fit(const MatrixInput& data, const PowerConfig& config) {
  config.validate(data);
  if (config.mode != PowerConfig::Mode::Block)
    throw ArgumentError("mode", "Block", "rsvd_gpb_fit requires block mode");
  const Matrix& a = data.matrix();
  const Eigen::Index r = config.r;

  ThinSvd svd = thin_svd(a, r);
  Matrix y = svd.left;
  Matrix previous = svd.right;
  Matrix normalized = previous;

  FitReport report;
  report.pca.loadings = svd.right;
  report.pca.spectrum = svd.singular_values;
  report.pca.variances = svd.singular_values.array().square();
  int zero_hits = 0;

  for (int t = 1; t <= config.max_iterations; ++t) {
    const Matrix z = a.transpose() * y;
    Matrix x(z.rows(), r);
    double energy = 0.0;
    for (Eigen::Index j = 0; j < r; ++j) {
      Vector col = truncate_iterate(z.col(j), config);
      if (!(col.norm() > 0.0)) {
        ++zero_hits;
        col = z.col(j);
      } else {
        energy += removed_energy(z.col(j), col);
      }
      x.col(j) = col;
    }
    y = polar(a * x);
    normalized = x.array().rowwise() / x.colwise().norm().array();

    IterationRecord rec;
    rec.rel_change = aligned_relative_change(normalized, previous);
    rec.truncated_energy_mean = energy / static_cast<double>(r);
    rec.objective = (y.transpose() * a * x).trace();
    if (config.record_trace) {
      rec.sp = 1.0 - static_cast<double>((normalized.array().abs() > kZeroTolerance).count()) /
                         static_cast<double>(normalized.size());
      rec.cpev = cpev(data, normalized);
      if (r > 1) rec.nor = nonorthogonality(normalized).nor;
      rec.loadings = normalized;
      rec.factor = y;
    }
    report.trace.push_back(std::move(rec));
    report.iterations = t;
    previous = normalized;
    if (report.trace.back().rel_change < config.rel_change_tol) {
      report.converged = true;
      break;
    }
  }
  if (zero_hits > 0)
    report.warnings.push_back("truncation removed a whole column " + std::to_string(zero_hits) +
                              " time(s); untruncated column kept");
  report.loadings = std::move(normalized);
  report.final_metrics = compute_metrics(data, report.loadings);
  return report;
}

FitReport power_fit(const MatrixInput& input, const PowerConfig& config) {
  if (config.mode == PowerConfig::Mode::Block) return rsvd_gpb_fit(input, config);
  return rsvd_gp_fit(input, config);
}

Vector tpower_step(const Matrix& c, const Vector& x, Eigen::Index cardinality) {
  const Eigen::Index p = c.rows();
  if (cardinality < 1 || cardinality > p)
    throw ArgumentError("cardinality", "integer in [1, " + std::to_string(p) + "]",
                        "got " + std::to_string(cardinality));
  const Vector z = c * x;
  const Vector kept = apply_sparsity(z, p - cardinality);
  const double n = kept.norm();
  if (!(n > 0.0)) throw DegeneracyError("tpower_step: truncated iterate is zero", n);
  return kept / n;
}

}  // namespace spcart
