#include "shrinkvar/bayes_sampler.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "shrinkvar/csv.hpp"
#include "shrinkvar/errors.hpp"
#include "shrinkvar/rng.hpp"
#include "shrinkvar/stats.hpp"

namespace shrinkvar {

namespace {

// Variance clamp keeping the scale-mixture updates away from 0/inf; orders of
// magnitude outside any quantile the tests or summaries touch.
constexpr double kVarFloor = 1e-24;
constexpr double kVarCeil = 1e24;

double clamp_var(double v) { return std::clamp(v, kVarFloor, kVarCeil); }

double log_multivariate_gamma(double a, int d) {
  double out = 0.25 * d * (d - 1) * std::log(stats::kPi);
  for (int i = 0; i < d; ++i) out += std::lgamma(a - 0.5 * i);
  return out;
}

// log density of inverse-Wishart(nu, S) at Sigma, using an existing LLT of Sigma.
double log_inv_wishart_pdf(const Matrix& scale, double nu, const Eigen::LLT<Matrix>& sigma_llt,
                           const Matrix& sigma_inv) {
  const int d = static_cast<int>(scale.rows());
  const double logdet_scale = 2.0 * Matrix(Eigen::LLT<Matrix>(scale).matrixL()).diagonal().array().log().sum();
  const double logdet_sigma = 2.0 * Matrix(sigma_llt.matrixL()).diagonal().array().log().sum();
  return 0.5 * nu * logdet_scale - 0.5 * nu * d * std::log(2.0) - log_multivariate_gamma(0.5 * nu, d) -
         0.5 * (nu + d + 1) * logdet_sigma - 0.5 * (scale * sigma_inv).trace();
}

struct SamplerProblem {
  const LaggedDesign& design;
  PriorKind prior;
  McmcSettings settings;
  int K;  // coefficient count
  int d;
  Matrix xtx;  // k x k
  Matrix xty;  // k x d
  double iw_nu0;
  Matrix iw_scale0;
};

ChainState initial_state(const SamplerProblem& prob) {
  ChainState s;
  s.beta = Vector::Zero(prob.K);
  s.local_var = Vector::Ones(prob.K);
  if (prob.prior.variant == PriorVariant::Horseshoe) s.local_aux = Vector::Ones(prob.K);
  s.global_scale = prob.prior.variant == PriorVariant::Lasso && prob.prior.fixed_eta > 0.0
                       ? prob.prior.fixed_eta
                       : 1.0;
  s.global_aux = 1.0;
  s.sigma = prob.settings.fixed_sigma ? *prob.settings.fixed_sigma : Matrix::Identity(prob.d, prob.d);
  return s;
}

// Per-coefficient prior precision for the current scales.
void prior_precision(const SamplerProblem& prob, const ChainState& s, Vector& out) {
  switch (prob.prior.variant) {
    case PriorVariant::Normal:
      out.setOnes();
      break;
    case PriorVariant::Horseshoe: {
      const double tau2 = s.global_scale * s.global_scale;
      out = (s.local_var * tau2).cwiseInverse();
      break;
    }
    case PriorVariant::Lasso:
      out = s.local_var.cwiseInverse();
      break;
  }
}

// beta | scales, Sigma, data ~ N(P^{-1} b, P^{-1}) with
// P = X'X (x) Sigma^{-1} + diag(prior precision), b = vec(Sigma^{-1} Y'X).
// Indexing follows the canonical flat order j = c*d + i for B(i, c).
bool update_beta(const SamplerProblem& prob, ChainState& s, const Matrix& sigma_inv, Rng& rng,
                 Matrix& precision_buf) {
  const int d = prob.d;
  const int k = prob.design.spec.regressor_count();
  const int K = prob.K;

  precision_buf.resize(K, K);
  for (int c = 0; c < k; ++c)
    for (int cc = 0; cc < k; ++cc)
      precision_buf.block(cc * d, c * d, d, d) = prob.xtx(cc, c) * sigma_inv;

  Vector prior_prec(K);
  prior_precision(prob, s, prior_prec);
  precision_buf.diagonal() += prior_prec;

  Matrix lin = sigma_inv * prob.xty.transpose();  // d x k
  Eigen::Map<Vector> b(lin.data(), K);

  Eigen::LLT<Matrix> llt(precision_buf);
  if (llt.info() != Eigen::Success) return false;
  Vector mean = llt.solve(b);
  Vector z(K);
  for (int j = 0; j < K; ++j) z(j) = rng.normal();
  s.beta = mean + llt.matrixU().solve(z);
  return s.beta.allFinite();
}

// Horseshoe scale-mixture conditionals (half-Cauchy via inverse-gamma
// auxiliaries): lambda_j^2 ~ IG(1, 1/nu_j + beta_j^2/(2 tau^2)),
// nu_j ~ IG(1, 1 + 1/lambda_j^2), tau^2 ~ IG((K+1)/2, 1/xi + sum beta^2/lambda^2 / 2),
// xi ~ IG(1, 1 + 1/tau^2).
void update_horseshoe_scales(const SamplerProblem& prob, ChainState& s, Rng& rng) {
  const int K = prob.K;
  double tau2 = s.global_scale * s.global_scale;
  for (int j = 0; j < K; ++j) {
    const double b2 = s.beta(j) * s.beta(j);
    s.local_var(j) = clamp_var(rng.inverse_gamma(1.0, 1.0 / s.local_aux(j) + 0.5 * b2 / tau2));
    s.local_aux(j) = clamp_var(rng.inverse_gamma(1.0, 1.0 + 1.0 / s.local_var(j)));
  }
  double rate = 1.0 / s.global_aux;
  for (int j = 0; j < K; ++j) rate += 0.5 * s.beta(j) * s.beta(j) / s.local_var(j);
  tau2 = clamp_var(rng.inverse_gamma(0.5 * (K + 1), rate));
  s.global_scale = std::sqrt(tau2);
  s.global_aux = clamp_var(rng.inverse_gamma(1.0, 1.0 + 1.0 / tau2));
}

// Univariate slice sampler with stepping-out and shrinkage.
template <typename LogDensity>
double slice_sample(double x0, const LogDensity& logf, double width, Rng& rng) {
  const double log_y = logf(x0) + std::log(rng.uniform() + 1e-300);
  double lo = x0 - width * rng.uniform();
  double hi = lo + width;
  for (int i = 0; i < 64 && logf(lo) > log_y; ++i) lo -= width;
  for (int i = 0; i < 64 && logf(hi) > log_y; ++i) hi += width;
  for (int i = 0; i < 128; ++i) {
    const double x1 = rng.uniform(lo, hi);
    if (logf(x1) >= log_y) return x1;
    if (x1 < x0) lo = x1;
    else hi = x1;
  }
  return x0;  // shrinkage exhausted; keep the current point
}

// Bayesian lasso: eta from its collapsed conditional p(eta | beta) (slice on
// log eta), then the auxiliary variances omega_j^2 given (beta, eta) via the
// inverse-Gaussian conditional of Park & Casella.
void update_lasso_scales(const SamplerProblem& prob, ChainState& s, Rng& rng) {
  const int K = prob.K;
  const double abs_beta_sum = s.beta.cwiseAbs().sum();

  if (prob.prior.fixed_eta <= 0.0) {
    const auto log_target = [&](double log_eta) {
      const double eta = std::exp(log_eta);
      return -static_cast<double>(K) * std::log(2.0 * eta) - abs_beta_sum / eta +
             stats::log_half_cauchy_pdf(eta, 1.0) + log_eta;  // + Jacobian
    };
    const double log_eta = slice_sample(std::log(s.global_scale), log_target, 1.0, rng);
    s.global_scale = std::clamp(std::exp(log_eta), 1e-12, 1e12);
  }

  const double eta = s.global_scale;
  for (int j = 0; j < K; ++j) {
    const double abs_b = std::abs(s.beta(j));
    if (abs_b < 1e-12 * eta) {
      // beta_j ~ 0: conditional reduces to the Gamma(1/2, 2 eta^2) tail.
      s.local_var(j) = clamp_var(rng.gamma(0.5, 2.0 * eta * eta));
    } else {
      const double inv_omega2 = rng.inverse_gaussian(1.0 / (eta * abs_b), 1.0 / (eta * eta));
      s.local_var(j) = clamp_var(1.0 / inv_omega2);
    }
  }
}

// Sigma | beta, data ~ IW(nu0 + n, S0 + R'R). Returns Sigma^{-1} via the
// Bartlett draw of the Wishart precision.
bool update_sigma(const SamplerProblem& prob, ChainState& s, Rng& rng, Matrix& sigma_inv) {
  const int d = prob.d;
  const auto n = prob.design.rows();
  Matrix resid_scale = prob.iw_scale0;
  if (n > 0) {
    Matrix resid = prob.design.Y - prob.design.X * Eigen::Map<const Matrix>(s.beta.data(), d,
                                                                            prob.design.spec.regressor_count())
                                                      .transpose();
    resid_scale += resid.transpose() * resid;
  }
  const double nu = prob.iw_nu0 + static_cast<double>(n);

  Eigen::LLT<Matrix> scale_llt(resid_scale);
  if (scale_llt.info() != Eigen::Success) return false;
  // Wishart(nu, resid_scale^{-1}) via Bartlett: W = (L^{-T} A)(L^{-T} A)'
  // where resid_scale = L L' and A is the Bartlett lower triangle.
  Matrix a = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    a(i, i) = std::sqrt(rng.chi_squared(nu - i));
    for (int j = 0; j < i; ++j) a(i, j) = rng.normal();
  }
  Matrix factor = scale_llt.matrixL().transpose().solve(a);
  sigma_inv = factor * factor.transpose();

  Eigen::LLT<Matrix> prec_llt(sigma_inv);
  if (prec_llt.info() != Eigen::Success) return false;
  s.sigma = prec_llt.solve(Matrix::Identity(d, d));
  s.sigma = 0.5 * (s.sigma + s.sigma.transpose());
  return s.sigma.allFinite();
}

void store_row(const SamplerProblem& prob, const ChainState& s, Matrix& out, int row) {
  out.block(row, 0, 1, prob.K) = s.beta.transpose();
  out.block(row, prob.K, 1, prob.d * prob.d) =
      Eigen::Map<const Vector>(s.sigma.data(), prob.d * prob.d).transpose();
  if (prob.settings.store_scales) {
    const int base = prob.K + prob.d * prob.d;
    out(row, base) = s.global_scale;
    out.block(row, base + 1, 1, prob.K) = s.local_var.cwiseSqrt().transpose();
  }
}

Matrix run_chain(const SamplerProblem& prob, int chain_index) {
  Rng rng(seed_stream(prob.settings.seed, static_cast<std::uint64_t>(chain_index)));
  ChainState s = initial_state(prob);

  Matrix sigma_inv;
  if (prob.settings.fixed_sigma) {
    Eigen::LLT<Matrix> llt(s.sigma);
    if (llt.info() != Eigen::Success)
      throw std::domain_error("sample_posterior: fixed Sigma is not positive-definite");
    sigma_inv = llt.solve(Matrix::Identity(prob.d, prob.d));
  } else {
    sigma_inv = Matrix::Identity(prob.d, prob.d);
  }

  const int n_cols =
      prob.K + prob.d * prob.d + (prob.settings.store_scales ? 1 + prob.K : 0);
  Matrix draws(prob.settings.retained(), n_cols);
  Matrix precision_buf;
  for (int iter = 0; iter < prob.settings.n_iter; ++iter) {
    if (!update_beta(prob, s, sigma_inv, rng, precision_buf))
      throw SamplerError("chain " + std::to_string(chain_index) +
                         ": coefficient conditional not positive-definite at iteration " +
                         std::to_string(iter));
    switch (prob.prior.variant) {
      case PriorVariant::Normal: break;
      case PriorVariant::Horseshoe: update_horseshoe_scales(prob, s, rng); break;
      case PriorVariant::Lasso: update_lasso_scales(prob, s, rng); break;
    }
    if (!prob.settings.fixed_sigma && !update_sigma(prob, s, rng, sigma_inv))
      throw SamplerError("chain " + std::to_string(chain_index) +
                         ": covariance conditional degenerate at iteration " + std::to_string(iter));
    const int past_warmup = iter - prob.settings.n_warmup;
    if (past_warmup >= 0 && past_warmup % prob.settings.thin == 0 &&
        past_warmup / prob.settings.thin < draws.rows())
      store_row(prob, s, draws, past_warmup / prob.settings.thin);
  }
  if (!draws.allFinite())
    throw SamplerError("chain " + std::to_string(chain_index) + ": non-finite draws");
  return draws;
}

// --- convergence diagnostics -------------------------------------------------

// Split every chain in half; drops the middle draw of odd-length chains.
std::vector<Vector> split_halves(const std::vector<Vector>& chains) {
  std::vector<Vector> halves;
  for (const auto& c : chains) {
    const Eigen::Index half = c.size() / 2;
    if (half < 1) continue;
    halves.push_back(c.head(half));
    halves.push_back(c.tail(half));
  }
  return halves;
}

struct VarianceParts {
  double w = 0.0;         // mean within-sequence variance
  double var_plus = 0.0;  // (N-1)/N * W + B/N
  double n = 0.0;         // sequence length
};

VarianceParts variance_parts(const std::vector<Vector>& seqs) {
  const double m = static_cast<double>(seqs.size());
  const double n = static_cast<double>(seqs.front().size());
  double w = 0.0;
  std::vector<double> means;
  for (const auto& s : seqs) {
    const double mu = s.mean();
    means.push_back(mu);
    w += (s.array() - mu).square().sum() / (n - 1.0);
  }
  w /= m;
  const double grand = stats::mean(means);
  double b_over_n = 0.0;
  for (double mu : means) b_over_n += (mu - grand) * (mu - grand);
  b_over_n /= (m - 1.0);
  return {w, (n - 1.0) / n * w + b_over_n, n};
}

double split_rhat(const std::vector<Vector>& chains) {
  auto halves = split_halves(chains);
  if (halves.size() < 2 || halves.front().size() < 2) return 1.0;
  const auto parts = variance_parts(halves);
  if (parts.w <= 0.0) return 1.0;
  return std::sqrt(parts.var_plus / parts.w);
}

// Bulk ESS: rank-normalize the pooled draws, split chains, then the paired
// Geyer initial-monotone autocorrelation sum.
double bulk_ess(const std::vector<Vector>& chains) {
  Eigen::Index total = 0;
  for (const auto& c : chains) total += c.size();

  // Average ranks for ties, then z = Phi^{-1}((r - 3/8) / (S + 1/4)).
  std::vector<std::pair<double, Eigen::Index>> order;
  order.reserve(total);
  {
    Eigen::Index offset = 0;
    for (const auto& c : chains) {
      for (Eigen::Index i = 0; i < c.size(); ++i) order.emplace_back(c(i), offset + i);
      offset += c.size();
    }
  }
  std::sort(order.begin(), order.end());
  std::vector<double> zval(total);
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && order[j].first == order[i].first) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j - 1)) + 1.0;
    const double z = stats::normal_quantile((avg_rank - 0.375) / (static_cast<double>(total) + 0.25));
    for (std::size_t k = i; k < j; ++k) zval[order[k].second] = z;
    i = j;
  }
  std::vector<Vector> normed;
  {
    Eigen::Index offset = 0;
    for (const auto& c : chains) {
      Vector v(c.size());
      for (Eigen::Index i = 0; i < c.size(); ++i) v(i) = zval[offset + i];
      normed.push_back(std::move(v));
      offset += c.size();
    }
  }

  auto halves = split_halves(normed);
  if (halves.size() < 1 || halves.front().size() < 4) return static_cast<double>(total);
  const auto parts = variance_parts(halves);
  if (parts.var_plus <= 0.0 || parts.w <= 0.0) return static_cast<double>(total);

  const double n = parts.n;
  const double m = static_cast<double>(halves.size());
  const auto max_lag = static_cast<Eigen::Index>(n) - 3;

  std::vector<double> means;
  for (const auto& h : halves) means.push_back(h.mean());

  // Biased (divisor N) autocovariance averaged over sequences at a given lag.
  const auto mean_acov = [&](Eigen::Index t) {
    double acc = 0.0;
    for (std::size_t s = 0; s < halves.size(); ++s) {
      const auto& h = halves[s];
      double a = 0.0;
      for (Eigen::Index i = 0; i + t < h.size(); ++i)
        a += (h(i) - means[s]) * (h(i + t) - means[s]);
      acc += a / n;
    }
    return acc / m;
  };

  double tau = 1.0;  // pair sums below add 2*(rho_t + rho_{t+1})
  double prev_pair = std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 1; t + 1 <= max_lag; t += 2) {
    const double rho_a = 1.0 - (parts.w - n / (n - 1.0) * mean_acov(t)) / parts.var_plus;
    const double rho_b = 1.0 - (parts.w - n / (n - 1.0) * mean_acov(t + 1)) / parts.var_plus;
    double pair = rho_a + rho_b;
    if (pair < 0.0) break;
    pair = std::min(pair, prev_pair);  // monotone envelope
    prev_pair = pair;
    tau += 2.0 * pair;
  }
  const double ess = m * n / tau;
  return std::clamp(ess, 1.0, static_cast<double>(total));
}

}  // namespace

std::string PosteriorDraws::param_name(int idx) const {
  const int K = coef_count();
  if (idx < 0 || idx >= n_params()) throw std::out_of_range("PosteriorDraws: parameter index");
  if (idx < K) return "beta_" + std::to_string(idx + 1);
  if (idx < K + spec.d * spec.d) {
    const int within = idx - K;
    const int c = within / spec.d;
    const int r = within % spec.d;
    return "sigma_" + std::to_string(r + 1) + "_" + std::to_string(c + 1);
  }
  const int scale_idx = idx - K - spec.d * spec.d;
  return scale_idx == 0 ? "global_scale" : "local_scale_" + std::to_string(scale_idx);
}

double log_posterior(const ChainState& state, const LaggedDesign& design, const PriorKind& prior) {
  const int d = design.spec.d;
  const int K = design.spec.coef_count();
  if (state.beta.size() != K) throw std::invalid_argument("log_posterior: beta length mismatch");
  if (state.sigma.rows() != d || state.sigma.cols() != d)
    throw std::invalid_argument("log_posterior: Sigma dimension mismatch");

  Eigen::LLT<Matrix> sigma_llt(state.sigma);
  if (sigma_llt.info() != Eigen::Success)
    throw std::domain_error("log_posterior: Sigma is not positive-definite");
  const Matrix sigma_inv = sigma_llt.solve(Matrix::Identity(d, d));
  const double logdet_sigma = 2.0 * Matrix(sigma_llt.matrixL()).diagonal().array().log().sum();

  double lp = 0.0;

  const auto n = design.rows();
  if (n > 0) {
    Matrix resid =
        design.Y -
        design.X * Eigen::Map<const Matrix>(state.beta.data(), d, design.spec.regressor_count())
                       .transpose();
    lp += -0.5 * static_cast<double>(n) * (d * std::log(2.0 * stats::kPi) + logdet_sigma) -
          0.5 * (sigma_inv * (resid.transpose() * resid)).trace();
  }

  switch (prior.variant) {
    case PriorVariant::Normal:
      for (int j = 0; j < K; ++j) lp += stats::log_normal_pdf(state.beta(j), 0.0, 1.0);
      break;
    case PriorVariant::Horseshoe: {
      const double tau = state.global_scale;
      if (state.local_var.size() != K)
        throw std::invalid_argument("log_posterior: horseshoe scales missing");
      for (int j = 0; j < K; ++j) {
        const double lam = std::sqrt(state.local_var(j));
        lp += stats::log_normal_pdf(state.beta(j), 0.0, state.local_var(j) * tau * tau);
        lp += stats::log_half_cauchy_pdf(lam, 1.0);
      }
      lp += stats::log_half_cauchy_pdf(tau, 1.0);
      break;
    }
    case PriorVariant::Lasso: {
      const double eta = state.global_scale;
      for (int j = 0; j < K; ++j) lp += stats::log_laplace_pdf(state.beta(j), eta);
      if (prior.fixed_eta <= 0.0) lp += stats::log_half_cauchy_pdf(eta, 1.0);
      break;
    }
  }

  lp += log_inv_wishart_pdf(Matrix::Identity(d, d), d + 2.0, sigma_llt, sigma_inv);
  return lp;
}

PosteriorDraws sample_posterior(const LaggedDesign& design, const PriorKind& prior,
                                const McmcSettings& settings) {
  design.spec.validate();
  if (design.X.rows() != design.Y.rows())
    throw std::invalid_argument("sample_posterior: X and Y row counts differ");
  if (settings.n_chains < 1 || settings.n_iter < 1 || settings.n_warmup < 0 ||
      settings.n_warmup >= settings.n_iter || settings.thin < 1 || settings.retained() < 1)
    throw std::invalid_argument("sample_posterior: bad chain/iteration settings");
  if (settings.fixed_sigma &&
      (settings.fixed_sigma->rows() != design.spec.d || settings.fixed_sigma->cols() != design.spec.d))
    throw std::invalid_argument("sample_posterior: fixed Sigma has wrong dimensions");

  const int d = design.spec.d;
  const int k = design.spec.regressor_count();
  SamplerProblem prob{design, prior, settings, design.spec.coef_count(), d,
                      Matrix::Zero(k, k), Matrix::Zero(k, d), d + 2.0, Matrix::Identity(d, d)};
  if (design.rows() > 0) {
    if (design.X.cols() != k || design.Y.cols() != d)
      throw std::invalid_argument("sample_posterior: design shape does not match its spec");
    prob.xtx = design.X.transpose() * design.X;
    prob.xty = design.X.transpose() * design.Y;
  }

  PosteriorDraws out;
  out.spec = design.spec;
  out.n_iter = settings.n_iter;
  out.n_warmup = settings.n_warmup;
  out.thin = settings.thin;
  out.n_scale_params = settings.store_scales ? 1 + design.spec.coef_count() : 0;
  out.chains.resize(settings.n_chains);

  std::vector<std::string> failures;
  if (settings.parallel_chains && settings.n_chains > 1) {
    std::vector<std::future<Matrix>> futures;
    for (int c = 0; c < settings.n_chains; ++c)
      futures.push_back(std::async(std::launch::async, [&prob, c] { return run_chain(prob, c); }));
    for (int c = 0; c < settings.n_chains; ++c) {
      try {
        out.chains[c] = futures[c].get();
      } catch (const std::exception& e) {
        failures.emplace_back(e.what());
      }
    }
  } else {
    for (int c = 0; c < settings.n_chains; ++c) {
      try {
        out.chains[c] = run_chain(prob, c);
      } catch (const std::exception& e) {
        failures.emplace_back(e.what());
      }
    }
  }
  if (!failures.empty()) {
    std::string msg = "sample_posterior: " + std::to_string(failures.size()) + "/" +
                      std::to_string(settings.n_chains) + " chains failed";
    for (const auto& f : failures) msg += "; " + f;
    throw SamplerError(msg);
  }
  return out;
}

PosteriorSummary summarize(const PosteriorDraws& draws) {
  if (draws.chains.empty()) throw std::invalid_argument("summarize: no chains");
  const int P = draws.n_params();
  Eigen::Index total = 0;
  for (const auto& c : draws.chains) {
    if (c.cols() != P) throw std::invalid_argument("summarize: chain width mismatch");
    total += c.rows();
  }
  if (total < 2) throw std::invalid_argument("summarize: need at least 2 retained draws");

  PosteriorSummary s;
  s.mean.resize(P);
  s.q025.resize(P);
  s.q975.resize(P);
  s.rhat.resize(P);
  s.ess.resize(P);

  for (int p = 0; p < P; ++p) {
    std::vector<Vector> per_chain;
    std::vector<double> pooled;
    pooled.reserve(total);
    for (const auto& c : draws.chains) {
      per_chain.push_back(c.col(p));
      for (Eigen::Index i = 0; i < c.rows(); ++i) pooled.push_back(c(i, p));
    }
    s.mean(p) = stats::mean(pooled);
    s.q025(p) = stats::quantile_type7(pooled, 0.025);
    s.q975(p) = stats::quantile_type7(pooled, 0.975);
    s.rhat(p) = split_rhat(per_chain);
    s.ess(p) = bulk_ess(per_chain);
  }
  return s;
}

FitResult fit_bayes(const LaggedDesign& design, const PriorKind& prior,
                    const McmcSettings& settings) {
  const PosteriorDraws draws = sample_posterior(design, prior, settings);
  const PosteriorSummary summary = summarize(draws);
  const int K = draws.coef_count();
  FitResult fit{prior.method(), CoefMatrix::FromFlat(design.spec, summary.mean.head(K)),
                summary.q025.head(K), summary.q975.head(K)};
  fit.max_rhat = summary.rhat.maxCoeff();
  fit.min_ess = summary.ess.minCoeff();
  return fit;
}

void dump_draws(const PosteriorDraws& draws, const std::string& path_prefix) {
  std::vector<std::string> header;
  for (int p = 0; p < draws.n_params(); ++p) header.push_back(draws.param_name(p));
  for (std::size_t c = 0; c < draws.chains.size(); ++c) {
    csv::Writer w(path_prefix + "_chain" + std::to_string(c + 1) + ".csv");
    w.row(header);
    csv::write_matrix_rows(w, draws.chains[c]);
  }
}

}  // namespace shrinkvar
