#include "shrinkvar/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "shrinkvar/errors.hpp"
#include "shrinkvar/stats.hpp"

namespace shrinkvar {

IndexMask zero_mask(const Vector& beta_true) {
  IndexMask mask;
  for (Eigen::Index j = 0; j < beta_true.size(); ++j)
    if (beta_true(j) == 0.0) mask.push_back(j);
  return mask;
}

IndexMask nonzero_mask(const Vector& beta_true) {
  IndexMask mask;
  for (Eigen::Index j = 0; j < beta_true.size(); ++j)
    if (beta_true(j) != 0.0) mask.push_back(j);
  return mask;
}

namespace {

void check_mask(const std::optional<IndexMask>& mask, Eigen::Index n, const char* op) {
  if (!mask) return;
  if (mask->empty()) throw UndefinedMetricError(std::string(op) + ": empty index mask");
  for (auto j : *mask)
    if (j < 0 || j >= n) throw std::invalid_argument(std::string(op) + ": mask index out of range");
}

}  // namespace

double param_rmse(const Vector& beta_hat, const Vector& beta_true,
                  const std::optional<IndexMask>& mask) {
  if (beta_hat.size() != beta_true.size()) throw std::invalid_argument("param_rmse: length mismatch");
  if (beta_hat.size() == 0) throw UndefinedMetricError("param_rmse: empty vectors");
  check_mask(mask, beta_true.size(), "param_rmse");
  double ss = 0.0;
  Eigen::Index count = 0;
  auto add = [&](Eigen::Index j) {
    const double e = beta_hat(j) - beta_true(j);
    ss += e * e;
    ++count;
  };
  if (mask)
    for (auto j : *mask) add(j);
  else
    for (Eigen::Index j = 0; j < beta_true.size(); ++j) add(j);
  return std::sqrt(ss / static_cast<double>(count));
}

double coverage(const Vector& lower, const Vector& upper, const Vector& beta_true,
                const std::optional<IndexMask>& mask) {
  if (lower.size() != beta_true.size() || upper.size() != beta_true.size())
    throw std::invalid_argument("coverage: length mismatch");
  if (beta_true.size() == 0) throw UndefinedMetricError("coverage: empty vectors");
  check_mask(mask, beta_true.size(), "coverage");
  Eigen::Index hits = 0, count = 0;
  auto add = [&](Eigen::Index j) {
    if (lower(j) <= beta_true(j) && beta_true(j) <= upper(j)) ++hits;
    ++count;
  };
  if (mask)
    for (auto j : *mask) add(j);
  else
    for (Eigen::Index j = 0; j < beta_true.size(); ++j) add(j);
  return static_cast<double>(hits) / static_cast<double>(count);
}

double mean_interval_length(const Vector& lower, const Vector& upper,
                            const std::optional<IndexMask>& mask) {
  if (lower.size() != upper.size()) throw std::invalid_argument("mean_interval_length: length mismatch");
  if (lower.size() == 0) throw UndefinedMetricError("mean_interval_length: empty vectors");
  check_mask(mask, lower.size(), "mean_interval_length");
  double sum = 0.0;
  Eigen::Index count = 0;
  auto add = [&](Eigen::Index j) {
    sum += upper(j) - lower(j);
    ++count;
  };
  if (mask)
    for (auto j : *mask) add(j);
  else
    for (Eigen::Index j = 0; j < lower.size(); ++j) add(j);
  return sum / static_cast<double>(count);
}

double forecast_rmse(const ForecastSet& fs) {
  const auto H = fs.predictions.rows();
  const auto d = fs.predictions.cols();
  if (H * d == 0) throw UndefinedMetricError("forecast_rmse: empty forecast set");
  if (fs.actuals.rows() != H || fs.actuals.cols() != d)
    throw std::invalid_argument("forecast_rmse: predictions and actuals not congruent");
  const double ss = (fs.predictions - fs.actuals).squaredNorm();
  return std::sqrt(ss / static_cast<double>(H * d));
}

LagSweepStats lag_sweep_stats(const std::vector<double>& rmse_by_lag,
                              const std::vector<double>& mape_by_lag) {
  if (rmse_by_lag.size() != 12 || mape_by_lag.size() != 12)
    throw std::invalid_argument("lag_sweep_stats: expected exactly 12 per-lag entries");
  LagSweepStats out;
  out.mean_rmse = stats::mean(rmse_by_lag);
  out.sd_rmse = stats::sample_sd(rmse_by_lag);
  out.mean_mape = stats::mean(mape_by_lag);
  out.sd_mape = stats::sample_sd(mape_by_lag);
  return out;
}

BestTally tally_best(const std::vector<EvalRecord>& records) {
  // Group by (scenario, replication).
  std::map<std::pair<int, int>, std::vector<const EvalRecord*>> groups;
  for (const auto& r : records) groups[{r.scenario, r.replication}].push_back(&r);

  BestTally tally;
  for (Method m : kAllMethods) {
    tally.best_forecast[m] = 0.0;
    tally.best_param[m] = 0.0;
  }

  const auto method_rank = [](Method m) {
    for (std::size_t i = 0; i < std::size(kAllMethods); ++i)
      if (kAllMethods[i] == m) return i;
    return std::size(kAllMethods);
  };

  for (const auto& [key, group] : groups) {
    if (group.size() != std::size(kAllMethods))
      throw std::invalid_argument("tally_best: every method must be present per replication");
    auto pick_best = [&](auto metric_of, int& tie_counter) {
      const EvalRecord* best = nullptr;
      int n_at_min = 0;
      for (const EvalRecord* r : group) {
        if (!best || metric_of(r) < metric_of(best) ||
            (metric_of(r) == metric_of(best) && method_rank(r->method) < method_rank(best->method))) {
          if (best && metric_of(r) == metric_of(best)) ++n_at_min;
          else n_at_min = 1;
          best = r;
        } else if (metric_of(r) == metric_of(best)) {
          ++n_at_min;
        }
      }
      if (n_at_min > 1) ++tie_counter;
      return best->method;
    };
    tally.best_forecast[pick_best([](const EvalRecord* r) { return r->forecast_rmse; },
                                  tally.forecast_ties)] += 1.0;
    tally.best_param[pick_best([](const EvalRecord* r) { return r->param_rmse_all; },
                               tally.param_ties)] += 1.0;
  }

  const double n_groups = static_cast<double>(groups.size());
  if (n_groups > 0) {
    for (auto& [m, v] : tally.best_forecast) v /= n_groups;
    for (auto& [m, v] : tally.best_param) v /= n_groups;
  }
  return tally;
}

}  // namespace shrinkvar
