#include <doctest.h>

#include "shrinkvar/errors.hpp"
#include "shrinkvar/freq_estimators.hpp"
#include "shrinkvar/metrics.hpp"
#include "shrinkvar/rng.hpp"
#include "shrinkvar/simulation.hpp"
#include "shrinkvar/var_core.hpp"

using namespace shrinkvar;

namespace {

LaggedDesign random_design(Rng& rng, int n, int d, int p) {
  LaggedDesign design;
  design.spec = VarSpec{d, p};
  design.X.resize(n, d * p);
  design.Y.resize(n, d);
  for (int c = 0; c < d * p; ++c)
    for (int r = 0; r < n; ++r) design.X(r, c) = rng.normal();
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < n; ++r) design.Y(r, c) = rng.normal();
  return design;
}

double ridge_objective(const LaggedDesign& design, const Matrix& b, double lambda) {
  return (design.Y - design.X * b.transpose()).squaredNorm() + lambda * b.squaredNorm();
}

}  // namespace

TEST_CASE("ridge_fit: lambda 0 equals ordinary least squares") {
  Rng rng(31);
  const LaggedDesign design = random_design(rng, 60, 2, 2);
  const FreqFit fit = ridge_fit(design, 0.0);
  const Matrix ols =
      (design.X.transpose() * design.X).ldlt().solve(design.X.transpose() * design.Y).transpose();
  CHECK((fit.b_hat.entries() - ols).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(fit.method == Method::Ridge);
  CHECK(fit.lambda == 0.0);
}

TEST_CASE("ridge_fit: huge penalty crushes the estimate") {
  Rng rng(32);
  const LaggedDesign design = random_design(rng, 50, 3, 1);
  const FreqFit fit = ridge_fit(design, 1e9);
  CHECK(fit.b_hat.entries().cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("ridge_fit: scalar hand computation") {
  LaggedDesign design;
  design.spec = VarSpec{1, 1};
  design.X.resize(3, 1);
  design.X << 1, 2, 3;
  design.Y.resize(3, 1);
  design.Y << 2, 4, 6;
  const FreqFit fit = ridge_fit(design, 0.1);
  CHECK(fit.b_hat.entries()(0, 0) == doctest::Approx(28.0 / 14.1).epsilon(1e-12));
}

TEST_CASE("ridge_fit: singular design with lambda 0 raises, lambda > 0 succeeds") {
  LaggedDesign design;
  design.spec = VarSpec{1, 2};
  design.X.resize(4, 2);
  design.X << 1, 1, 2, 2, 3, 3, 4, 4;  // duplicated column
  design.Y.resize(4, 1);
  design.Y << 1, 2, 3, 4;
  CHECK_THROWS_AS(ridge_fit(design, 0.0), RankDeficiencyError);
  CHECK_NOTHROW(ridge_fit(design, 0.1));
}

TEST_CASE("ridge_fit: tiny lambda recovers exact linear responses") {
  Rng rng(33);
  Matrix truth(3, 3);
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) truth(r, c) = rng.uniform(-0.4, 0.4);
  truth = rescale_stationary(truth);

  // Excite the regressors with the noisy recursion, then take the noiseless
  // responses Y = X B' on those rows.
  SeriesMatrix series = SeriesMatrix::Zero(120, 3);
  Vector y = Vector::Zero(3);
  for (int t = 0; t < 120; ++t) {
    Vector eps(3);
    for (int i = 0; i < 3; ++i) eps(i) = 0.3 * rng.normal();
    y = truth * y + eps;
    series.row(t) = y.transpose();
  }
  LaggedDesign design = build_design(series, 1);
  design.Y = design.X * truth.transpose();
  const FreqFit fit = ridge_fit(design, 1e-8);
  CHECK((fit.b_hat.entries() - truth).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("ridge_fit: shrinkage monotone in lambda and objective optimal") {
  Rng rng(34);
  for (int trial = 0; trial < 5; ++trial) {
    const LaggedDesign design = random_design(rng, 40, 2, 2);
    double prev_norm = std::numeric_limits<double>::infinity();
    for (double lambda : {0.01, 0.1, 1.0, 10.0}) {
      const FreqFit fit = ridge_fit(design, lambda);
      const double norm = fit.b_hat.entries().norm();
      CHECK(norm <= prev_norm + 1e-12);
      prev_norm = norm;

      const double at_opt = ridge_objective(design, fit.b_hat.entries(), lambda);
      for (int k = 0; k < 10; ++k) {
        Matrix eps(2, 4);
        for (int c = 0; c < 4; ++c)
          for (int r = 0; r < 2; ++r) eps(r, c) = rng.normal();
        eps *= 1e-3 / eps.norm();
        CHECK(ridge_objective(design, fit.b_hat.entries() + eps, lambda) >= at_opt);
      }
      // Relative objective gap against a fine-grained local search.
      CHECK(at_opt <= ridge_objective(design, fit.b_hat.entries(), lambda) * (1 + 1e-8));
    }
  }
}

TEST_CASE("ns_fit: forced intensity endpoints") {
  Rng rng(35);
  const LaggedDesign design = random_design(rng, 50, 2, 2);

  // delta = 0: OLS on centered data.
  const FreqFit none = ns_fit(design, true, 0.0);
  Matrix xc = design.X.rowwise() - design.X.colwise().mean();
  Matrix yc = design.Y.rowwise() - design.Y.colwise().mean();
  const Matrix ols = (xc.transpose() * xc).ldlt().solve(xc.transpose() * yc).transpose();
  CHECK((none.b_hat.entries() - ols).cwiseAbs().maxCoeff() < 1e-10);

  // delta = 1: each coefficient is a univariate regression slope.
  const FreqFit full = ns_fit(design, true, 1.0);
  for (int j = 0; j < 4; ++j) {
    const double slope = xc.col(j).dot(yc.col(0)) / xc.col(j).squaredNorm();
    CHECK(full.b_hat.entries()(0, j) == doctest::Approx(slope).epsilon(1e-10));
  }
  CHECK(full.method == Method::NS);
  CHECK(full.shrink_intensity == 1.0);
}

TEST_CASE("ns_fit: error paths") {
  Rng rng(36);
  LaggedDesign design = random_design(rng, 2, 1, 1);
  CHECK_THROWS_AS(ns_fit(design), InsufficientDataError);
}

TEST_CASE("ns_fit: automatic intensity interior and competitive on scenario-2 data") {
  const ScenarioConfig cfg = ScenarioConfig::scenario2();
  const Replication rep = simulate_replication(cfg, 0);
  const LaggedDesign design = build_design(rep.train, cfg.p_fit);

  const FreqFit ns = ns_fit(design);
  CHECK(ns.shrink_intensity > 0.0);
  CHECK(ns.shrink_intensity < 1.0);

  const FreqFit ridge = ridge_fit(design, 0.1);
  const Vector truth = rep.b_true.flat();
  const double rmse_ns = param_rmse(ns.b_hat.flat(), truth);
  const double rmse_ridge = param_rmse(ridge.b_hat.flat(), truth);
  CHECK(std::abs(rmse_ns - rmse_ridge) <= 0.25 * rmse_ridge);
}

TEST_CASE("ns_fit: permuting response columns permutes coefficient rows") {
  Rng rng(37);
  const LaggedDesign design = random_design(rng, 40, 3, 1);
  LaggedDesign permuted = design;
  permuted.Y.col(0) = design.Y.col(2);
  permuted.Y.col(2) = design.Y.col(0);
  const FreqFit base = ns_fit(design);
  const FreqFit perm = ns_fit(permuted);
  CHECK((perm.b_hat.entries().row(0) - base.b_hat.entries().row(2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((perm.b_hat.entries().row(2) - base.b_hat.entries().row(0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((perm.b_hat.entries().row(1) - base.b_hat.entries().row(1)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("freq fits are deterministic") {
  Rng rng(38);
  const LaggedDesign design = random_design(rng, 30, 2, 1);
  CHECK((ridge_fit(design).b_hat.entries() - ridge_fit(design).b_hat.entries()).norm() == 0.0);
  CHECK((ns_fit(design).b_hat.entries() - ns_fit(design).b_hat.entries()).norm() == 0.0);
}
