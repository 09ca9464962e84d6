#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shrinkvar/forecasting.hpp"
#include "shrinkvar/types.hpp"

namespace shrinkvar {

using IndexMask = std::vector<Eigen::Index>;

// Indices where the true coefficient is exactly zero (the DGP's planted
// zeros), and the complement.
IndexMask zero_mask(const Vector& beta_true);
IndexMask nonzero_mask(const Vector& beta_true);

// sqrt(mean over the masked indices of squared error); no mask = all indices.
// An empty mask is an undefined metric, not zero.
double param_rmse(const Vector& beta_hat, const Vector& beta_true,
                  const std::optional<IndexMask>& mask = std::nullopt);

// Fraction of masked intervals [lower_j, upper_j] containing beta_true_j
// (closed interval).
double coverage(const Vector& lower, const Vector& upper, const Vector& beta_true,
                const std::optional<IndexMask>& mask = std::nullopt);

double mean_interval_length(const Vector& lower, const Vector& upper,
                            const std::optional<IndexMask>& mask = std::nullopt);

// sqrt( sum_t ||y_t - yhat_t||^2 / (H*d) ).
double forecast_rmse(const ForecastSet& fs);

// One row of the per-replication results table. NaN marks a missing
// (undefined) metric; the CSV schema follows this field order.
struct EvalRecord {
  int scenario = 0;
  int replication = 0;
  Method method = Method::Ridge;
  double param_rmse_all = 0, param_rmse_zero = 0, param_rmse_nonzero = 0;
  double coverage_all = 0, coverage_zero = 0, coverage_nonzero = 0;
  double mean_len_all = 0, mean_len_zero = 0, mean_len_nonzero = 0;
  double forecast_rmse = 0;
};

struct LagSweepStats {
  double mean_rmse = 0, sd_rmse = 0, mean_mape = 0, sd_mape = 0;
};

// Mean and sample SD (divisor n-1) of the twelve per-lag forecast errors.
LagSweepStats lag_sweep_stats(const std::vector<double>& rmse_by_lag,
                              const std::vector<double>& mape_by_lag);

// Per-method share of replications where the method is the unique minimizer.
struct BestTally {
  std::map<Method, double> best_forecast;  // fraction of replications
  std::map<Method, double> best_param;
  int forecast_ties = 0;  // replications decided by the tie-break order
  int param_ties = 0;
};

// Records must contain every method for every (scenario, replication) pair;
// ties are broken by the fixed method order and counted.
BestTally tally_best(const std::vector<EvalRecord>& records);

}  // namespace shrinkvar
