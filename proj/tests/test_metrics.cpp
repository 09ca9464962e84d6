#include <doctest.h>

#include "shrinkvar/errors.hpp"
#include "shrinkvar/metrics.hpp"
#include "shrinkvar/rng.hpp"

using namespace shrinkvar;

TEST_CASE("param_rmse: fixed cases") {
  Vector truth(3);
  truth << 0, 0, 1;
  CHECK(param_rmse(truth, truth) == 0.0);

  Vector off = truth.array() + 0.3;
  CHECK(param_rmse(off, truth) == doctest::Approx(0.3).epsilon(1e-12));

  Vector est(3);
  est << 0.1, -0.1, 0.8;
  CHECK(param_rmse(est, truth) == doctest::Approx(0.14142).epsilon(1e-4));

  CHECK_THROWS_AS(param_rmse(est, truth, IndexMask{}), UndefinedMetricError);
  CHECK_THROWS_AS(param_rmse(Vector::Zero(2), truth), std::invalid_argument);
}

TEST_CASE("param_rmse: zero/nonzero decomposition identity on random inputs") {
  Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_int(40));
    Vector truth(n), est(n);
    for (int i = 0; i < n; ++i) {
      truth(i) = rng.uniform() < 0.5 ? 0.0 : rng.normal();
      est(i) = rng.normal();
    }
    const IndexMask zm = zero_mask(truth);
    const IndexMask nm = nonzero_mask(truth);
    if (zm.empty() || nm.empty()) continue;
    const double all = param_rmse(est, truth);
    const double zero = param_rmse(est, truth, zm);
    const double nonzero = param_rmse(est, truth, nm);
    const double lhs = all * all * n;
    const double rhs = zero * zero * zm.size() + nonzero * nonzero * nm.size();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("coverage: fixed cases and monotonicity under widening") {
  Vector truth(4);
  truth << 0.0, 1.0, -1.0, 2.0;

  CHECK(coverage(Vector::Constant(4, -1e9), Vector::Constant(4, 1e9), truth) == 1.0);

  Vector point = truth.array() + 1.0;  // degenerate intervals off the truth
  CHECK(coverage(point, point, truth) == 0.0);

  Vector lo(4), hi(4);
  lo << -0.5, 0.5, 0.5, 2.5;  // covers indices 0, 1 only
  hi << 0.5, 1.5, 0.8, 3.0;
  CHECK(coverage(lo, hi, truth) == 0.5);

  Rng rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    Vector l(4), u(4);
    for (int i = 0; i < 4; ++i) {
      l(i) = rng.normal();
      u(i) = l(i) + std::abs(rng.normal());
    }
    const double before = coverage(l, u, truth);
    const double widened = coverage(l.array() - 0.5, u.array() + 0.5, truth);
    CHECK(widened >= before);
  }
}

TEST_CASE("mean_interval_length: fixed cases") {
  Vector zero = Vector::Zero(3);
  CHECK(mean_interval_length(zero, zero) == 0.0);
  CHECK(mean_interval_length(zero, Vector::Constant(3, 0.7)) == doctest::Approx(0.7));
  Vector lo(2), hi(2);
  lo << 0, 0;
  hi << 0.1, 0.3;
  CHECK(mean_interval_length(lo, hi) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("forecast_rmse: fixed cases and invariances") {
  ForecastSet fs;
  fs.predictions = Matrix::Zero(4, 2);
  fs.actuals = Matrix::Zero(4, 2);
  CHECK(forecast_rmse(fs) == 0.0);

  fs.predictions = Matrix::Constant(4, 2, 0.25);
  CHECK(forecast_rmse(fs) == doctest::Approx(0.25).epsilon(1e-12));

  ForecastSet pair;
  pair.predictions = Matrix::Zero(2, 1);
  pair.actuals.resize(2, 1);
  pair.actuals << 3, 4;
  CHECK(forecast_rmse(pair) == doctest::Approx(3.53553).epsilon(1e-5));

  // Permutation invariance over steps and coordinates.
  Rng rng(53);
  ForecastSet base;
  base.predictions.resize(5, 3);
  base.actuals.resize(5, 3);
  for (Eigen::Index c = 0; c < 3; ++c)
    for (Eigen::Index r = 0; r < 5; ++r) {
      base.predictions(r, c) = rng.normal();
      base.actuals(r, c) = rng.normal();
    }
  ForecastSet shuffled = base;
  shuffled.predictions.row(0).swap(shuffled.predictions.row(4));
  shuffled.actuals.row(0).swap(shuffled.actuals.row(4));
  shuffled.predictions.col(1).swap(shuffled.predictions.col(2));
  shuffled.actuals.col(1).swap(shuffled.actuals.col(2));
  CHECK(forecast_rmse(base) == doctest::Approx(forecast_rmse(shuffled)).epsilon(1e-14));
}

TEST_CASE("lag_sweep_stats: fixed cases") {
  std::vector<double> constant(12, 0.4);
  const LagSweepStats c = lag_sweep_stats(constant, constant);
  CHECK(c.mean_rmse == doctest::Approx(0.4));
  CHECK(c.sd_rmse == doctest::Approx(0.0));

  std::vector<double> ramp;
  for (int p = 1; p <= 12; ++p) ramp.push_back(p / 10.0);
  const LagSweepStats s = lag_sweep_stats(ramp, ramp);
  CHECK(s.mean_rmse == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(s.sd_rmse == doctest::Approx(0.36056).epsilon(1e-4));

  CHECK_THROWS_AS(lag_sweep_stats({1.0}, {1.0}), std::invalid_argument);
}

namespace {

EvalRecord make_record(int rep, Method m, double frmse, double prmse) {
  EvalRecord r;
  r.scenario = 1;
  r.replication = rep;
  r.method = m;
  r.forecast_rmse = frmse;
  r.param_rmse_all = prmse;
  return r;
}

}  // namespace

TEST_CASE("tally_best: unique winners and alternation") {
  std::vector<EvalRecord> records;
  for (int rep = 0; rep < 10; ++rep) {
    for (Method m : kAllMethods) {
      // Horseshoe always best in param; forecast alternates Ridge/NS by rep.
      const double frmse = (rep % 2 == 0 ? (m == Method::Ridge ? 0.1 : 0.5)
                                         : (m == Method::NS ? 0.1 : 0.5));
      const double prmse = m == Method::Horseshoe ? 0.01 : 0.2;
      records.push_back(make_record(rep, m, frmse, prmse));
    }
  }
  const BestTally tally = tally_best(records);
  CHECK(tally.best_param.at(Method::Horseshoe) == doctest::Approx(1.0));
  CHECK(tally.best_param.at(Method::Ridge) == doctest::Approx(0.0));
  CHECK(tally.best_forecast.at(Method::Ridge) == doctest::Approx(0.5));
  CHECK(tally.best_forecast.at(Method::NS) == doctest::Approx(0.5));
  CHECK(tally.param_ties == 0);

  // Ties are broken by the fixed method order and counted.
  std::vector<EvalRecord> tied;
  for (Method m : kAllMethods) tied.push_back(make_record(0, m, 0.1, 0.1));
  const BestTally tie_tally = tally_best(tied);
  CHECK(tie_tally.best_forecast.at(Method::Horseshoe) == doctest::Approx(1.0));
  CHECK(tie_tally.forecast_ties == 1);
  CHECK(tie_tally.param_ties == 1);

  std::vector<EvalRecord> incomplete{make_record(0, Method::Ridge, 0.1, 0.1)};
  CHECK_THROWS_AS(tally_best(incomplete), std::invalid_argument);
}
