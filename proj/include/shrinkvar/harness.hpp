#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shrinkvar/bayes_sampler.hpp"
#include "shrinkvar/metrics.hpp"
#include "shrinkvar/simulation.hpp"
#include "shrinkvar/types.hpp"

namespace shrinkvar {

// Environment variable controlling the replication worker pool width.
inline constexpr const char* kWorkersEnvVar = "SHRINKVAR_WORKERS";

// Batch-run configuration. Defaults reproduce the full-scale study settings
// (scenario presets; chains=4, iter=2000, warmup=500; n_boot=30, block=4;
// ridge lambda=0.1); apply_profile("desk") switches to the reduced scale.
struct RunConfig {
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  int n_rep = 0;  // 0 = scenario preset value
  int n_chains = 4;
  int n_iter = 2000;
  int n_warmup = 500;
  int n_boot = 30;
  int block_len = 4;
  double ridge_lambda = 0.1;
  bool ns_center = true;
  std::uint64_t base_seed = 123;
  std::string out_dir = "out";
  int n_workers = 0;  // 0 = SHRINKVAR_WORKERS env var, else hardware width
  bool export_replications = false;
  std::string canada_csv = "data/canada.csv";
  int canada_max_lag = 12;
  // Scenario-shape overrides for off-preset grids (d, p_star, p_fit, ...).
  std::optional<int> d_override, p_star_override, p_fit_override;
  std::optional<double> sparsity_override, sigma_eps2_override;

  // "desk": n_rep=10, chains=2, iter=1000, warmup=250. "paper": full scale.
  void apply_profile(const std::string& name);

  // Flat key=value file ('#' comments); unknown keys are errors. CLI flags
  // are applied after the file, so flags win.
  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value);

  ScenarioConfig make_scenario(int scenario_id) const;
  McmcSettings make_mcmc(std::uint64_t seed) const;
  int resolve_workers(int n_tasks) const;
};

// Fits every configured method on one replication and scores it. The same
// data and derived seeds are used regardless of which methods are selected
// or in which order results are collected.
std::vector<EvalRecord> evaluate_replication(const RunConfig& config,
                                             const ScenarioConfig& scenario, int scenario_id,
                                             int rep_index);

struct ScenarioRunResult {
  std::vector<EvalRecord> records;         // sorted by (scenario, replication, method)
  std::vector<std::string> failures;       // "replication=<i> seed=<s>: <what>"
  int n_rep = 0;
};

// Full scenario loop: simulate, fit, score, and write the per-replication and
// summary CSV set plus a plain-text report into config.out_dir. Fails when
// more than 10% of replications fail.
ScenarioRunResult run_scenario(const RunConfig& config, int scenario_id);

// --- Canada pipeline ---------------------------------------------------------

struct CanadaDataset {
  Matrix values;                       // 84 x 4, columns (e, prod, rw, U)
  std::vector<std::string> quarters;   // 1980Q1 .. 2000Q4
  static constexpr int kRows = 84;
  static constexpr int kCols = 4;
  static const char* column_name(int c);
};

// Loads and validates the 84x4 dataset; the file's values are not trusted
// beyond shape/finiteness checks (U must look like percent units).
CanadaDataset load_canada(const std::string& path);

struct CanadaCell {
  Method method;
  int p;
  double rmse;       // averaged over the four series
  double mape;       // percent, averaged over the four series
  Vector rmse_by_series;
  Vector mape_by_series;
};

struct CanadaRunResult {
  std::vector<CanadaCell> table;             // methods x lags, sorted (method, p)
  std::map<Method, LagSweepStats> summary;
  std::vector<std::string> warnings;
};

// Per-series forecast errors over a hold-out block: RMSE per column and the
// percent MAPE per column; |actual| < 1e-9 entries are excluded from MAPE.
void holdout_errors(const Matrix& predicted, const Matrix& actual, Vector& rmse_out,
                    Vector& mape_out, std::vector<std::string>* warnings = nullptr);

// Lag-order sweep on the differenced series: for p = 1..max_lag fit each
// method once on the first (T-1)-4 differences, forecast the final four
// quarters one step ahead on the level scale (realized anchors), and
// summarize across lags. Writes the CSV set and report into config.out_dir.
CanadaRunResult run_canada(const RunConfig& config);

// --- report generation -------------------------------------------------------

// Writes summary CSVs, best-method tallies, long-format plot data, and the
// plain-text report for a scenario's records. Pure function of the records.
void emit_scenario_report(const std::vector<EvalRecord>& records, int scenario_id,
                          const std::string& out_dir);

void emit_canada_report(const CanadaRunResult& result, const std::string& out_dir);

// Re-aggregates summaries from previously written per-replication CSVs
// (evalrecords_scenario*.csv, canada_lag_table.csv) found in in_dir.
void regenerate_reports(const std::string& in_dir, const std::string& out_dir);

std::vector<EvalRecord> read_eval_records(const std::string& path);

}  // namespace shrinkvar
