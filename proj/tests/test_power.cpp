#include <cmath>
#include <random>

#include "doctest.h"
#include "spcart/datasets.hpp"
#include "spcart/errors.hpp"
#include "spcart/linalg.hpp"
#include "spcart/power.hpp"

using namespace spcart;

namespace {

Matrix gaussian_data(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix a(n, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = g(rng) * (1.0 + 4.0 / double(j + 1));
  return center_columns(a).matrix;
}

PowerConfig config(Eigen::Index r, TruncationKind kind, double lambda,
                   PowerConfig::Mode mode = PowerConfig::Mode::Deflation) {
  PowerConfig c;
  c.r = r;
  c.truncation = {kind, lambda};
  c.mode = mode;
  return c;
}

}  // namespace

TEST_CASE("rSVD-GP with T-sp follows the TPower recurrence step for step") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = gaussian_data(40, 12, seed);
    const Matrix c = a.transpose() * a;
    const Eigen::Index lambda = 4 + seed % 5;
    PowerConfig cfg = config(1, TruncationKind::BySparsity, double(lambda));
    cfg.record_trace = true;
    cfg.rel_change_tol = 1e-14;
    cfg.max_iterations = 30;
    const FitReport rep = rsvd_gp_fit(MatrixInput::covariance(c), cfg);

    Eigen::Index start;
    c.diagonal().maxCoeff(&start);
    Vector x = Vector::Unit(12, start);
    for (const auto& rec : rep.trace) {
      x = tpower_step(c, x, 12 - lambda);
      REQUIRE(rec.loadings.has_value());
      CHECK((*rec.loadings - x).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("data and covariance input give the same deflation loadings") {
  const Matrix a = gaussian_data(50, 10, 3);
  const PowerConfig cfg = config(3, TruncationKind::HardThreshold, 0.2);
  const FitReport d = rsvd_gp_fit(MatrixInput::data(a), cfg);
  const FitReport c = rsvd_gp_fit(MatrixInput::covariance(a.transpose() * a), cfg);
  CHECK((d.loadings - c.loadings).norm() < 1e-8);
  CHECK(d.per_loading_iterations == c.per_loading_iterations);
}

TEST_CASE("zero lambda recovers the leading eigenvectors") {
  const Matrix a = gaussian_data(80, 6, 4);
  PowerConfig cfg = config(2, TruncationKind::HardThreshold, 0.0);
  cfg.rel_change_tol = 1e-10;
  cfg.max_iterations = 5000;
  const FitReport rep = rsvd_gp_fit(MatrixInput::data(a), cfg);
  const PcaBasis pca = pca_loadings(MatrixInput::data(a), 2);
  for (Eigen::Index j = 0; j < 2; ++j)
    CHECK(std::abs(rep.loadings.col(j).dot(pca.loadings.col(j))) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("deflation makes later loadings nearly orthogonal to earlier ones") {
  const Matrix a = gaussian_data(100, 15, 5);
  PowerConfig cfg = config(4, TruncationKind::ByEnergy, 0.1);
  const FitReport rep = rsvd_gp_fit(MatrixInput::data(a), cfg);
  CHECK(rep.final_metrics.nor < 0.2);
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(rep.loadings.col(j).norm() == doctest::Approx(1.0));
  CHECK(rep.per_loading_iterations.size() == 4);
}

TEST_CASE("block power on a data matrix") {
  const Matrix a = gaussian_data(60, 12, 6);
  PowerConfig cfg = config(3, TruncationKind::BySparsity, 6, PowerConfig::Mode::Block);
  cfg.record_trace = true;
  const FitReport rep = rsvd_gpb_fit(MatrixInput::data(a), cfg);
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(rep.loadings.col(j).norm() == doctest::Approx(1.0));
    CHECK(rep.final_metrics.per_column_cardinality[j] == 6);
  }
  const Matrix& y = *rep.trace.back().factor;
  CHECK((y.transpose() * y - Matrix::Identity(3, 3)).norm() < 1e-10);
  CHECK(power_fit(MatrixInput::data(a), cfg).loadings.isApprox(rep.loadings));
}

TEST_CASE("block power requires data input and r within the shape") {
  const Matrix a = gaussian_data(8, 10, 7);
  CHECK_THROWS_AS(
      rsvd_gpb_fit(MatrixInput::covariance(a.transpose() * a),
                   config(2, TruncationKind::HardThreshold, 0.1, PowerConfig::Mode::Block)),
      ArgumentError);
  CHECK_THROWS_AS(rsvd_gpb_fit(MatrixInput::data(a), config(9, TruncationKind::HardThreshold, 0.1,
                                                             PowerConfig::Mode::Block)),
                  ArgumentError);
}

TEST_CASE("raw thresholds accept lambda above one") {
  const Matrix a = gaussian_data(40, 8, 8);
  PowerConfig cfg = config(2, TruncationKind::HardThreshold, 3.0);
  cfg.adaptive = false;
  CHECK_NOTHROW(rsvd_gp_fit(MatrixInput::data(a), cfg));
  cfg.adaptive = true;
  CHECK_THROWS_AS(rsvd_gp_fit(MatrixInput::data(a), cfg), ArgumentError);
}

TEST_CASE("raw threshold that removes everything falls back with a warning") {
  const Matrix a = gaussian_data(40, 8, 9);
  PowerConfig cfg = config(1, TruncationKind::HardThreshold, 1e9);
  cfg.adaptive = false;
  const FitReport rep = rsvd_gp_fit(MatrixInput::data(a), cfg);
  CHECK_FALSE(rep.warnings.empty());
  CHECK(rep.loadings.col(0).norm() == doctest::Approx(1.0));
}

TEST_CASE("rSVD-GP exhausting the rank raises a degeneracy") {
  Matrix a = Matrix::Zero(5, 4);
  a(0, 0) = 2;
  a(1, 1) = 1;
  CHECK_THROWS_AS(rsvd_gp_fit(MatrixInput::data(a), config(3, TruncationKind::HardThreshold, 0.0)),
                  DegeneracyError);
}

TEST_CASE("tpower step keeps the requested cardinality") {
  const Matrix c = synthetic_covariance();
  const Vector x = Vector::Constant(10, 1 / std::sqrt(10.0));
  const Vector next = tpower_step(c, x, 4);
  CHECK((next.array() != 0.0).count() == 4);
  CHECK(next.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(tpower_step(c, x, 0), ArgumentError);
}
