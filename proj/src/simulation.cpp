#include "shrinkvar/simulation.hpp"

#include <stdexcept>

#include "shrinkvar/csv.hpp"
#include "shrinkvar/var_core.hpp"

namespace shrinkvar {

void ScenarioConfig::validate() const {
  if (d < 1) throw std::invalid_argument("ScenarioConfig: d must be >= 1");
  if (p_star < 1 || p_fit < p_star)
    throw std::invalid_argument("ScenarioConfig: need p_fit >= p_star >= 1");
  if (sparsity < 0.0 || sparsity > 1.0)
    throw std::invalid_argument("ScenarioConfig: sparsity must lie in [0,1]");
  if (sigma_eps2 <= 0.0) throw std::invalid_argument("ScenarioConfig: sigma_eps2 must be positive");
  if (t_train < p_fit + 1) throw std::invalid_argument("ScenarioConfig: t_train too small for p_fit");
  if (horizon < 1 || burn_in < 0 || n_rep < 1)
    throw std::invalid_argument("ScenarioConfig: horizon/burn_in/n_rep out of range");
}

ScenarioConfig ScenarioConfig::preset(int id) {
  switch (id) {
    case 1: return scenario1();
    case 2: return scenario2();
    case 3: return scenario3();
    default: throw std::invalid_argument("ScenarioConfig: scenario id must be 1, 2 or 3");
  }
}

Matrix draw_coefficients(Rng& rng, int d, double sparsity) {
  if (d < 1) throw std::invalid_argument("draw_coefficients: d must be >= 1");
  if (sparsity < 0.0 || sparsity > 1.0)
    throw std::invalid_argument("draw_coefficients: sparsity must lie in [0,1]");
  Matrix a(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r)
      a(r, c) = rng.uniform() < sparsity ? 0.0 : rng.uniform(-0.4, 0.4);
  return a;
}

Matrix rescale_stationary(const Matrix& a1) {
  if (a1.rows() != a1.cols()) throw std::invalid_argument("rescale_stationary: matrix must be square");
  const double rho = spectral_radius(a1);
  if (rho < 1e-12) return a1;
  // Sparse draws are often nilpotent by pattern (zero radius), which the
  // eigensolver reports as a tiny nonzero value; dividing by it would blow
  // the entries up. A^d == 0 identifies those draws exactly.
  Matrix power = a1;
  for (Eigen::Index i = 1; i < a1.rows(); ++i) power = power * a1;
  if (power.cwiseAbs().maxCoeff() == 0.0) return a1;

  // One pass scales the true radius exactly; iterate in case the measured
  // radius carried noise, until the result sits within the 1e-6 band.
  Matrix scaled = a1 / (1.1 * rho);
  for (int pass = 0; pass < 4; ++pass) {
    const double achieved = spectral_radius(scaled);
    if (std::abs(achieved - 1.0 / 1.1) <= 1e-6 * (1.0 / 1.1)) break;
    scaled /= 1.1 * achieved;
  }
  return scaled;
}

Replication simulate_replication(const ScenarioConfig& config, int rep_index) {
  config.validate();
  if (rep_index < 0) throw std::invalid_argument("simulate_replication: rep_index must be >= 0");

  const std::uint64_t seed = seed_stream(config.base_seed, static_cast<std::uint64_t>(rep_index));
  Rng rng(seed);

  Matrix a1 = rescale_stationary(draw_coefficients(rng, config.d, config.sparsity));

  // True coefficients at the fitted order: A_1 in block 1, exact zeros above.
  const VarSpec fit_spec{config.d, config.p_fit};
  Matrix b_padded = Matrix::Zero(config.d, fit_spec.regressor_count());
  b_padded.leftCols(config.d) = a1;

  const double sigma = std::sqrt(config.sigma_eps2);
  const int total = config.burn_in + config.t_train + config.horizon;
  // Higher-order true lags are all zero, so the recursion needs one lag of state.
  Vector y = Vector::Zero(config.d);
  SeriesMatrix kept(config.t_train + config.horizon, config.d);
  for (int t = 0; t < total; ++t) {
    Vector eps(config.d);
    for (int i = 0; i < config.d; ++i) eps(i) = sigma * rng.normal();
    y = a1 * y + eps;
    if (t >= config.burn_in) kept.row(t - config.burn_in) = y.transpose();
  }

  Replication rep{kept.topRows(config.t_train), kept.bottomRows(config.horizon),
                  CoefMatrix(fit_spec, std::move(b_padded)), seed};
  return rep;
}

void export_replication(const Replication& rep, const std::string& path_prefix) {
  const int d = rep.b_true.spec().d;
  std::vector<std::string> header;
  for (int i = 0; i < d; ++i) header.push_back("y" + std::to_string(i + 1));

  {
    csv::Writer w(path_prefix + "_train.csv");
    w.row(header);
    csv::write_matrix_rows(w, rep.train);
  }
  {
    csv::Writer w(path_prefix + "_test.csv");
    w.row(header);
    csv::write_matrix_rows(w, rep.test);
  }
  {
    csv::Writer w(path_prefix + "_truth.csv");
    std::vector<std::string> truth_header;
    for (Eigen::Index c = 0; c < rep.b_true.entries().cols(); ++c)
      truth_header.push_back("b" + std::to_string(c + 1));
    w.row(truth_header);
    csv::write_matrix_rows(w, rep.b_true.entries());
  }
}

}  // namespace shrinkvar
