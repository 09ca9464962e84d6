#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shrinkvar/types.hpp"

namespace shrinkvar {

enum class PriorVariant { Normal, Horseshoe, Lasso };

// Shrinkage prior on the coefficients. Normal is N(0,1) per coefficient with
// fixed unit scale; Horseshoe learns per-coefficient and global half-Cauchy
// scales; Lasso is Laplace(0, eta) with a half-Cauchy(0,1) hyperprior on eta
// unless `fixed_eta` pins it.
struct PriorKind {
  PriorVariant variant = PriorVariant::Normal;
  double fixed_eta = 0.0;  // Lasso only; > 0 disables the eta update

  static PriorKind normal() { return {PriorVariant::Normal}; }
  static PriorKind horseshoe() { return {PriorVariant::Horseshoe}; }
  static PriorKind lasso(double fixed_eta = 0.0) { return {PriorVariant::Lasso, fixed_eta}; }

  Method method() const {
    switch (variant) {
      case PriorVariant::Normal: return Method::Normal;
      case PriorVariant::Horseshoe: return Method::Horseshoe;
      case PriorVariant::Lasso: return Method::Lasso;
    }
    return Method::Normal;
  }
};

struct McmcSettings {
  int n_chains = 4;
  int n_iter = 2000;    // total per chain
  int n_warmup = 500;   // discarded
  std::uint64_t seed = 123;
  int thin = 1;  // keep every thin-th post-warmup draw
  bool parallel_chains = true;
  // Test mode: hold the error covariance at this value instead of sampling it
  // (conjugate closed-form checks, prior recovery with known covariance).
  std::optional<Matrix> fixed_sigma;
  // Append the prior scale draws (global, then per-coefficient local, on the
  // scale level) to the stored parameters. Off for ordinary fits.
  bool store_scales = false;

  int retained() const { return (n_iter - n_warmup) / thin; }
};

// Current position of one chain. Scale variables are stored as variances
// (local_var holds lambda_j^2 for the horseshoe, omega_j^2 for the lasso);
// global_scale holds tau (horseshoe) or eta (lasso) on the scale level.
struct ChainState {
  Vector beta;                // length d*d*p, canonical flat order
  Vector local_var;           // per-coefficient prior variances (unit for Normal)
  Vector local_aux;           // horseshoe nu_j; empty otherwise
  double global_scale = 1.0;  // tau (HS) / eta (Lasso) / 1 (Normal)
  double global_aux = 1.0;    // horseshoe xi
  Matrix sigma;               // d x d, symmetric positive-definite
};

// Draw storage: one row per retained iteration, coefficients first in
// canonical flat order, then the d*d covariance entries column-major.
// Parameter index map: j < K         -> coefficient j  ("beta_<j+1>")
//                      j = K + c*d+r -> Sigma(r, c)    ("sigma_<r+1>_<c+1>")
// With store_scales, one "global_scale" column (tau or eta) and K
// "local_scale_<j>" columns follow.
struct PosteriorDraws {
  std::vector<Matrix> chains;  // each retained() x n_params
  VarSpec spec;
  int n_iter = 0;
  int n_warmup = 0;
  int thin = 1;
  int n_scale_params = 0;  // 0, or 1 + coef_count() when scales are stored

  int coef_count() const { return spec.coef_count(); }
  int n_params() const { return spec.coef_count() + spec.d * spec.d + n_scale_params; }
  int retained() const { return (n_iter - n_warmup) / thin; }
  std::string param_name(int idx) const;
};

struct PosteriorSummary {
  Vector mean;  // per parameter
  Vector q025;
  Vector q975;
  Vector rhat;  // split-Rhat; 1 when the parameter has zero variance
  Vector ess;   // bulk ESS on rank-normalized draws; retained count when degenerate
};

// Log of the unnormalized joint density at `state`: Gaussian VAR likelihood
// with covariance Sigma, the active coefficient prior (horseshoe evaluated
// conditionally on its scales, lasso collapsed to Laplace given eta), and the
// inverse-Wishart(d+2, I) covariance prior.
double log_posterior(const ChainState& state, const LaggedDesign& design, const PriorKind& prior);

// Gibbs sampler targeting log_posterior; chains run on seeds derived from
// settings.seed and are bit-reproducible, serial or parallel.
PosteriorDraws sample_posterior(const LaggedDesign& design, const PriorKind& prior,
                                const McmcSettings& settings);

// Pooled-chain posterior mean and central 95% interval (type-7 quantiles),
// split-Rhat and bulk ESS per parameter.
PosteriorSummary summarize(const PosteriorDraws& draws);

// sample_posterior + summarize; point = posterior means, intervals = the
// 2.5%/97.5% quantiles, diagnostics = max Rhat / min ESS over all parameters.
FitResult fit_bayes(const LaggedDesign& design, const PriorKind& prior,
                    const McmcSettings& settings);

// One CSV per chain (<prefix>_chain<i>.csv), header = parameter index map.
void dump_draws(const PosteriorDraws& draws, const std::string& path_prefix);

}  // namespace shrinkvar
