// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit if
// any criterion fails. Each line lists the measured values it was judged on.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spcart/bounds.hpp"
#include "spcart/datasets.hpp"
#include "spcart/errors.hpp"
#include "spcart/linalg.hpp"
#include "spcart/metrics.hpp"
#include "spcart/power.hpp"
#include "spcart/spcart.hpp"

using namespace spcart;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "!") << what << "; ";
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

std::string pattern(const MetricsSnapshot& m) {
  std::string s;
  for (auto c : m.per_column_cardinality) s += std::to_string(c);
  return s;
}

bool support_is(const Vector& x, const std::vector<int>& one_based) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const bool expected =
        std::find(one_based.begin(), one_based.end(), int(i) + 1) != one_based.end();
    if ((std::abs(x(i)) > kZeroTolerance) != expected) return false;
  }
  return true;
}

SpcartConfig spcart_config(Eigen::Index r, TruncationKind kind, double lambda) {
  SpcartConfig c;
  c.r = r;
  c.truncation = {kind, lambda};
  return c;
}

PowerConfig power_config(Eigen::Index r, TruncationKind kind, double lambda, bool adaptive,
                         PowerConfig::Mode mode) {
  PowerConfig c;
  c.r = r;
  c.truncation = {kind, lambda};
  c.adaptive = adaptive;
  c.mode = mode;
  return c;
}

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

// Data with a few strong, roughly sparse directions plus noise.
MatrixInput structured_data(Eigen::Index n, Eigen::Index p, Eigen::Index k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix a = gaussian(n, p, rng);
  const Matrix f = gaussian(n, k, rng);
  std::uniform_int_distribution<Eigen::Index> pick(0, p - 1);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double weight = 6.0 / double(j + 1);
    for (int t = 0; t < 4; ++t) a.col(pick(rng)) += weight * f.col(j);
  }
  return MatrixInput::data(center_columns(a).matrix);
}

void c1(Verdict& v) {
  const MatrixInput in = MatrixInput::covariance(synthetic_covariance());
  const double cpev_v = cpev(in, pca_loadings(in, 2).loadings);
  v.check(within(cpev_v, 0.9973, 0.002), "CPEV(V)=" + fmt(cpev_v));

  const FitReport l0 =
      spcart_fit(in, spcart_config(2, TruncationKind::HardThreshold, 1 / std::sqrt(10.0)));
  v.check(support_is(l0.loadings.col(0), {5, 6, 7, 8, 9, 10}) &&
              support_is(l0.loadings.col(1), {1, 2, 3, 4}),
          "SPCArt(l0) supports");
  v.check(within(l0.final_metrics.cpev, 0.9848, 0.005),
          "SPCArt(l0) CPEV=" + fmt(l0.final_metrics.cpev));

  const FitReport sp = spcart_fit(in, spcart_config(2, TruncationKind::BySparsity, 4));
  v.check(support_is(sp.loadings.col(0), {5, 6, 7, 8, 9, 10}) &&
              support_is(sp.loadings.col(1), {1, 2, 3, 4, 9, 10}),
          "SPCArt(sp) supports");
  v.check(within(sp.final_metrics.cpev, 0.9968, 0.005),
          "SPCArt(sp) CPEV=" + fmt(sp.final_metrics.cpev));

  const FitReport gp = rsvd_gp_fit(
      in, power_config(2, TruncationKind::BySparsity, 4, true, PowerConfig::Mode::Deflation));
  v.check(within(gp.final_metrics.cpev, 0.9960, 0.005),
          "rSVD-GP(sp) CPEV=" + fmt(gp.final_metrics.cpev));
}

void c2(Verdict& v) {
  const Matrix c = load_pitprops();
  const MatrixInput in = MatrixInput::covariance(c);
  const TruncationSpec spec{TruncationKind::BySparsity, 10};
  const double cpev_v = cpev(in, pca_loadings(in, 6).loadings);
  v.check(within(cpev_v, 0.8700, 0.002), "CPEV(V)=" + fmt(cpev_v));

  const auto pattern_ok = [&](const std::string& name, const MetricsSnapshot& m) {
    v.check(pattern(m) == "333333" && m.sp_std == 0.0, name + " pattern=" + pattern(m));
  };
  const FitReport sc = spcart_fit(in, spcart_config(6, spec.kind, spec.lambda));
  pattern_ok("SPCArt", sc.final_metrics);
  v.check(within(sc.final_metrics.cpev, 0.7514, 0.01), "SPCArt CPEV=" + fmt(sc.final_metrics.cpev));
  v.check(within(sc.final_metrics.nor, 0.0428, 0.015), "SPCArt NOR=" + fmt(sc.final_metrics.nor));

  const FitReport gp = rsvd_gp_fit(
      in, power_config(6, spec.kind, spec.lambda, true, PowerConfig::Mode::Deflation));
  pattern_ok("rSVD-GP", gp.final_metrics);
  v.check(within(gp.final_metrics.cpev, 0.7819, 0.01),
          "rSVD-GP CPEV=" + fmt(gp.final_metrics.cpev) + " (target 0.7819)");

  const MatrixInput art = MatrixInput::data(artificial_data_from_covariance(c));
  const FitReport gpb =
      rsvd_gpb_fit(art, power_config(6, spec.kind, spec.lambda, true, PowerConfig::Mode::Block));
  const MetricsSnapshot gpb_m = compute_metrics(in, gpb.loadings);
  pattern_ok("rSVD-GPB", gpb_m);
  v.check(within(gpb_m.cpev, 0.7610, 0.01), "rSVD-GPB CPEV=" + fmt(gpb_m.cpev));
}

void c3(Verdict& v) {
  const MatrixInput in = MatrixInput::covariance(load_pitprops());
  const FitReport f =
      spcart_fit(in, spcart_config(6, TruncationKind::HardThreshold, 1 / std::sqrt(13.0)));
  const MetricsSnapshot& m = f.final_metrics;
  v.check(std::abs(m.nz() - 18) <= 1, "NZ=" + std::to_string(m.nz()) + " pattern=" + pattern(m));
  v.check(m.sp_std <= 0.09, "STD=" + fmt(m.sp_std));
  v.check(m.nor <= 0.03, "NOR=" + fmt(m.nor));
  v.check(within(m.cpev, 0.8013, 0.015), "CPEV=" + fmt(m.cpev));
}

void c4(Verdict& v) {
  int cells = 0, violations = 0;
  for (Eigen::Index p : {5, 20, 169}) {
    const double sq = 1 / std::sqrt(double(p));
    const std::vector<TruncationSpec> specs{
        {TruncationKind::HardThreshold, 0.1 * sq},  {TruncationKind::HardThreshold, 0.9 * sq},
        {TruncationKind::HardThreshold, 0.5},       {TruncationKind::SoftThreshold, 0.1 * sq},
        {TruncationKind::SoftThreshold, 0.9 * sq},  {TruncationKind::SoftThreshold, 0.5},
        {TruncationKind::BySparsity, 1},            {TruncationKind::BySparsity, double(p / 2)},
        {TruncationKind::BySparsity, double(p - 1)}, {TruncationKind::ByEnergy, 0.05},
        {TruncationKind::ByEnergy, 0.4},            {TruncationKind::ByEnergy, 0.9}};
    for (const auto& spec : specs) {
      const ContainmentSummary s = truncation_containment(spec, p, 1000, 1000 + cells);
      const int bad = s.sparsity_violations + s.deviation_violations + s.relative_violations;
      if (bad > 0)
        v.detail << "p=" << p << " " << to_string(spec.kind) << " lambda=" << spec.lambda
                 << " violations=" << bad << "; ";
      violations += bad;
      ++cells;
    }
  }
  v.check(violations == 0, std::to_string(cells) + " cells x 1000 vectors, violations=" +
                               std::to_string(violations));
}

void c5(Verdict& v) {
  std::mt19937_64 rng(5);
  const MatrixInput dmin_in = MatrixInput::data(center_columns(gaussian(200, 20, rng)).matrix);
  const DminContainment mc = ev_dmin_containment(dmin_in, 5, 500, 55);
  v.check(mc.violations == 0, "EVdmin 500 trials violations=" + std::to_string(mc.violations));

  // Dense loadings over many variables let T-en remove nearly the same
  // energy from every column, which is when the equal-angle hypothesis holds.
  int checked = 0, converged = 0, violations = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 data_rng(500 + seed);
    const MatrixInput in =
        MatrixInput::data(center_columns(gaussian(300, 150, data_rng)).matrix);
    const FitReport f = spcart_fit(in, spcart_config(4, TruncationKind::ByEnergy, 0.05));
    if (!f.converged) continue;
    ++converged;
    const CosBoundCheck check = check_ev_cos_bound(in, f, {TruncationKind::ByEnergy, 0.05});
    if (!check.applicable) continue;
    ++checked;
    if (!check.report.satisfied) ++violations;
  }
  v.check(checked > 0 && violations == 0, "EVcos converged=" + std::to_string(converged) +
                               " hypotheses-hold=" + std::to_string(checked) +
                               " violations=" + std::to_string(violations));
}

void c6(Verdict& v) {
  int st_mismatch = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MatrixInput in = structured_data(60, 15, 4, 600 + seed);
    SpcartConfig cfg = spcart_config(4, TruncationKind::HardThreshold, 0.2);
    cfg.record_trace = true;
    const FitReport f = spcart_fit(in, cfg);
    const Matrix st = simple_thresholding(in, 4, 0.2);
    if (!((*f.trace.front().loadings).array() == st.array()).all()) ++st_mismatch;
  }
  v.check(st_mismatch == 0, "(a) ST vs iteration 1 mismatches=" + std::to_string(st_mismatch));

  double worst = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(700 + seed);
    const Matrix a = gaussian(50, 15, rng);
    const Matrix c = a.transpose() * a;
    const Eigen::Index lambda = 5 + seed % 6;
    PowerConfig cfg =
        power_config(1, TruncationKind::BySparsity, double(lambda), true, PowerConfig::Mode::Deflation);
    cfg.record_trace = true;
    const FitReport f = rsvd_gp_fit(MatrixInput::covariance(c), cfg);
    Eigen::Index start;
    c.diagonal().maxCoeff(&start);
    Vector x = Vector::Unit(15, start);
    for (const auto& rec : f.trace) {
      x = tpower_step(c, x, 15 - lambda);
      worst = std::max(worst, (*rec.loadings - x).cwiseAbs().maxCoeff());
    }
  }
  v.check(worst <= 1e-10, "(b) TPower max abs diff=" + std::to_string(worst));

  std::mt19937_64 rng(800);
  std::uniform_real_distribution<double> scale(0.01, 100.0), lam(0.0, 0.3);
  double identity = 0;
  for (int t = 0; t < 1000; ++t) {
    const Vector z = gaussian(30, 1, rng).col(0) * scale(rng);
    const double n = z.norm();
    const double l = lam(rng);
    for (auto kind : {TruncationKind::HardThreshold, TruncationKind::SoftThreshold}) {
      const Vector lhs = n * apply_operator(z / n, kind, l);
      const Vector rhs = apply_operator(z, kind, l * n);
      identity = std::max(identity, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, n));
    }
  }
  v.check(identity <= 1e-12, "(c) adaptive identity max rel diff=" + std::to_string(identity));
}

void c7(Verdict& v) {
  std::mt19937_64 rng(900);
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index p = 2 + t % 7;
    Vector z = gaussian(p, 1, rng).col(0);
    z.normalize();
    for (Eigen::Index lambda = 0; lambda < p; ++lambda) {
      const TruncationResult r = truncate_by_sparsity(z, lambda);
      double best = 0;
      for (unsigned mask = 0; mask < (1u << p); ++mask) {
        if (__builtin_popcount(mask) != p - lambda) continue;
        double e = 0;
        for (Eigen::Index i = 0; i < p; ++i)
          if (mask & (1u << i)) e += z(i) * z(i);
        best = std::max(best, std::sqrt(e));
      }
      if (r.zero || r.vector.dot(z) < best - 1e-12) ++failures;
    }
  }
  v.check(failures == 0, "200 vectors, all lambda, failures=" + std::to_string(failures));
}

struct SweepPoint {
  double lambda;
  MetricsSnapshot m;
};

void c8(Verdict& v) {
  const MatrixInput in = MatrixInput::data(decaying_spectrum_data(100, 50, 0.7, 2024));
  const Eigen::Index r = 8;

  // Scan a log grid of lambda and keep the run whose mean sparsity is
  // closest to `target`. Degenerate runs and runs where a column was
  // truncated to zero (and kept dense by the fallback) are skipped, so the
  // comparison sees only genuine sparse solutions.
  const auto sweep = [&](bool adaptive, double lo, double hi, double target) {
    SweepPoint best{0, {}};
    double best_gap = 1e9;
    int skipped = 0;
    for (int k = 0; k <= 120; ++k) {
      const double lambda = lo * std::pow(hi / lo, k / 120.0);
      FitReport f;
      try {
        f = rsvd_gpb_fit(in, power_config(r, TruncationKind::HardThreshold, lambda, adaptive,
                                          PowerConfig::Mode::Block));
      } catch (const DegeneracyError&) {
        ++skipped;
        continue;
      }
      if (!f.warnings.empty()) {
        ++skipped;
        continue;
      }
      const double gap = std::abs(f.final_metrics.sp_mean - target);
      if (gap < best_gap) {
        best_gap = gap;
        best = {lambda, f.final_metrics};
      }
    }
    v.detail << (adaptive ? "adaptive" : "raw") << " sweep skipped " << skipped << "/121; ";
    return best;
  };
  const SweepPoint raw = sweep(false, 0.001, 0.2, 0.6);
  // Below 1/sqrt(p) adaptive hard thresholding cannot empty a unit column.
  const SweepPoint adaptive = sweep(true, 0.01, 0.99 / std::sqrt(50.0), raw.m.sp_mean);
  v.detail << "adaptive lambda=" << fmt(adaptive.lambda) << " SP=" << fmt(adaptive.m.sp_mean)
           << " worst=" << fmt(adaptive.m.sp_worst) << "; raw lambda=" << fmt(raw.lambda)
           << " SP=" << fmt(raw.m.sp_mean) << " worst=" << fmt(raw.m.sp_worst) << "; ";
  v.check(std::abs(adaptive.m.sp_mean - raw.m.sp_mean) <= 0.05, "mean sparsity matched");
  v.check(adaptive.m.sp_worst - raw.m.sp_worst >= 0.15,
          "worst-sparsity gap=" + fmt(adaptive.m.sp_worst - raw.m.sp_worst));

  const FitReport defl = rsvd_gp_fit(in, power_config(r, TruncationKind::HardThreshold,
                                                      adaptive.lambda, true,
                                                      PowerConfig::Mode::Deflation));
  const FitReport block = rsvd_gpb_fit(in, power_config(r, TruncationKind::HardThreshold,
                                                        adaptive.lambda, true,
                                                        PowerConfig::Mode::Block));
  v.check(defl.final_metrics.nor <= block.final_metrics.nor,
          "NOR deflation=" + fmt(defl.final_metrics.nor) +
              " block=" + fmt(block.final_metrics.nor));
}

void c9(Verdict& v) {
  int converged = 0, nondeterministic = 0, max_iter = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const Eigen::Index p = 20 + Eigen::Index((seed * 37) % 181);
    const Eigen::Index r = 2 + Eigen::Index((seed * 7) % 19);
    const Eigen::Index n = p + 30;
    const MatrixInput in = structured_data(n, p, r, 900 + seed);
    const TruncationKind kinds[] = {TruncationKind::HardThreshold, TruncationKind::SoftThreshold,
                                    TruncationKind::BySparsity, TruncationKind::ByEnergy};
    const TruncationKind kind = kinds[seed % 4];
    const double lambda = kind == TruncationKind::BySparsity ? double(p / 2)
                          : kind == TruncationKind::ByEnergy ? 0.2
                                                             : 1 / std::sqrt(double(p));
    const SpcartConfig cfg = spcart_config(r, kind, lambda);
    const FitReport a = spcart_fit(in, cfg);
    const FitReport b = spcart_fit(in, cfg);
    if (a.converged) ++converged;
    max_iter = std::max<int>(max_iter, int(a.iterations));
    if (!(a.loadings.array() == b.loadings.array()).all() || a.iterations != b.iterations)
      ++nondeterministic;
  }
  v.check(converged >= 18, "converged " + std::to_string(converged) + "/20 (max iterations " +
                               std::to_string(max_iter) + ")");
  v.check(nondeterministic == 0, "nondeterministic runs=" + std::to_string(nondeterministic));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds; 0 means none
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "synthetic recovery", 1.0, c1},
      {2, "Pitprops T-sp", 1.0, c2},
      {3, "Pitprops T-l0 SPCArt", 0.0, c3},
      {4, "bound containment", 10.0, c4},
      {5, "EV lower bounds", 0.0, c5},
      {6, "equivalences", 0.0, c6},
      {7, "T-sp optimality oracle", 5.0, c7},
      {8, "balance of sparsity", 0.0, c8},
      {9, "convergence hygiene", 0.0, c9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0) v.check(secs < c.time_limit, "runtime=" + fmt(secs, 3) + "s");
    else v.detail << "runtime=" << fmt(secs, 3) << "s";
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": "
              << v.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
