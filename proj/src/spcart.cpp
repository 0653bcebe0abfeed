#include "spcart/spcart.hpp"

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "spcart/errors.hpp"

namespace spcart {

double aligned_relative_change(const Matrix& x, const Matrix& previous) {
  double sq = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double sign = x.col(j).dot(previous.col(j)) < 0.0 ? -1.0 : 1.0;
    sq += (x.col(j) - sign * previous.col(j)).squaredNorm();
  }
  return std::sqrt(sq / static_cast<double>(x.cols()));
}

void SpcartConfig::validate(Eigen::Index p) const {
  if (r < 1) throw ArgumentError("r", "r >= 1", "got " + std::to_string(r));
  if (max_iterations < 1)
    throw ArgumentError("max_iterations", ">= 1", "got " + std::to_string(max_iterations));
  if (!(rel_change_tol > 0.0))
    throw ArgumentError("rel_change_tol", "> 0", "got " + std::to_string(rel_change_tol));
  if (random_restarts < 0)
    throw ArgumentError("random_restarts", ">= 0", "got " + std::to_string(random_restarts));
  truncation.validate(p);
}

Matrix truncate_columns(const Matrix& z, const TruncationSpec& spec,
                        double* truncated_energy_mean,
                        std::vector<Eigen::Index>* zero_columns) {
  Matrix x(z.rows(), z.cols());
  double energy = 0.0;
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const TruncationResult t = truncate(z.col(j), spec);
    energy += t.truncated_energy;
    if (t.zero) {
      x.col(j) = z.col(j);
      if (zero_columns != nullptr) zero_columns->push_back(j);
    } else {
      x.col(j) = t.vector;
    }
  }
  if (truncated_energy_mean != nullptr)
    *truncated_energy_mean = energy / static_cast<double>(z.cols());
  return x;
}

double spcart_objective(const Matrix& v, const Matrix& x, const Matrix& rotation,
                        const TruncationSpec& spec) {
  const double fit = (v - x * rotation).squaredNorm();
  switch (spec.kind) {
    case TruncationKind::SoftThreshold:
      return 0.5 * fit + spec.lambda * x.cwiseAbs().sum();
    case TruncationKind::HardThreshold: {
      const double nonzeros = static_cast<double>((x.array().abs() > kZeroTolerance).count());
      return fit + spec.lambda * spec.lambda * nonzeros;
    }
    default:
      return fit;
  }
}

namespace {

struct SingleRun {
  FitReport report;
  double objective = 0.0;
};

SingleRun run_from(const MatrixInput& input, const PcaBasis& pca, const SpcartConfig& config,
                   Matrix rotation) {
  const Matrix& v = pca.loadings;
  const Eigen::Index r = v.cols();
  SingleRun run;
  FitReport& report = run.report;
  std::map<Eigen::Index, int> zeroed;
  bool recovered = false;
  Matrix previous = v;
  Matrix x;

  for (int t = 1; t <= config.max_iterations; ++t) {
    const Matrix z = v * rotation.transpose();
    double energy = 0.0;
    std::vector<Eigen::Index> zero_columns;
    x = truncate_columns(z, config.truncation, &energy, &zero_columns);
    for (auto j : zero_columns) ++zeroed[j];

    IterationRecord rec;
    rec.rel_change = aligned_relative_change(x, previous);
    rec.truncated_energy_mean = energy;
    rec.objective = spcart_objective(v, x, rotation, config.truncation);
    if (config.record_trace) {
      rec.sp = 1.0 - static_cast<double>((x.array().abs() > kZeroTolerance).count()) /
                         static_cast<double>(x.size());
      rec.cpev = cpev(input, x);
      if (r > 1) rec.nor = nonorthogonality(x).nor;
      rec.loadings = x;
      rec.factor = rotation;
    }
    report.trace.push_back(std::move(rec));
    report.iterations = t;
    run.objective = report.trace.back().objective;

    if (report.trace.back().rel_change < config.rel_change_tol) {
      report.converged = true;
      break;
    }
    if (t == config.max_iterations) break;

    try {
      rotation = polar(x.transpose() * v);
    } catch (const DegeneracyError& e) {
      if (recovered) throw DegeneracyError(
          std::string("spcart: rotation update degenerate after re-initialization: ") + e.what(),
          e.offending_value());
      recovered = true;
      rotation = Matrix::Identity(r, r);
      report.warnings.push_back("iteration " + std::to_string(t) +
                                ": degenerate rotation update, R reset to identity");
    }
    previous = x;
  }

  for (const auto& [column, count] : zeroed)
    report.warnings.push_back("column " + std::to_string(column) + " truncated to zero in " +
                              std::to_string(count) +
                              " iteration(s); untruncated rotated loading kept");
  report.loadings = std::move(x);
  report.rotation = std::move(rotation);
  return run;
}

Matrix random_rotation(Eigen::Index r, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(r, r);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i < r; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(r, r);
}

}  // namespace

FitReport spcart_fit(const MatrixInput& input, const SpcartConfig& config) {
  config.validate(input.variables());
  PcaBasis pca = pca_loadings(input, config.r);
  const Eigen::Index r = config.r;

  SingleRun best = run_from(input, pca, config, Matrix::Identity(r, r));
  std::mt19937_64 rng(config.seed);
  for (int k = 0; k < config.random_restarts; ++k) {
    SingleRun candidate = run_from(input, pca, config, random_rotation(r, rng));
    if (candidate.objective < best.objective) best = std::move(candidate);
  }

  FitReport report = std::move(best.report);
  report.final_metrics = compute_metrics(input, report.loadings);
  report.pca = std::move(pca);
  return report;
}

Matrix simple_thresholding(const MatrixInput& input, Eigen::Index r, double lambda) {
  const TruncationSpec spec{TruncationKind::HardThreshold, lambda};
  spec.validate(input.variables());
  const PcaBasis pca = pca_loadings(input, r);
  return truncate_columns(pca.loadings, spec);
}

}  // namespace spcart
