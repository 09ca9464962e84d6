/* C API for the shrinkvar library: VAR(p) estimation under five shrinkage
 * methods, scenario simulation, and the batch experiment runner.
 *
 * All functions return sv_status (SV_OK on success); sv_last_error() holds a
 * thread-local message for the most recent failure. Objects are opaque
 * handles created by sv_*_new/sv_* constructors and released with the
 * matching sv_*_free; freeing NULL is a no-op.
 *
 * Matrices cross the boundary as row-major double buffers. Coefficient
 * vectors use the canonical flat order: for B(r, c) of the d x (d*p) stacked
 * coefficient matrix, index j = c*d + r (rows fastest, then lag blocks).
 */
#ifndef SHRINKVAR_H
#define SHRINKVAR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sv_status {
  SV_OK = 0,
  SV_ERR_INVALID_ARGUMENT = 1, /* bad value, validation failure */
  SV_ERR_LENGTH = 2,           /* series/history too short, size mismatch */
  SV_ERR_INSUFFICIENT_DATA = 3,
  SV_ERR_RANK_DEFICIENT = 4,
  SV_ERR_DOMAIN = 5,           /* e.g. non-positive-definite covariance */
  SV_ERR_SAMPLER = 6,          /* all-chain divergence */
  SV_ERR_IO = 7,
  SV_ERR_UNDEFINED_METRIC = 8,
  SV_ERR_INTERNAL = 9
} sv_status;

typedef struct sv_config sv_config;
typedef struct sv_series sv_series;
typedef struct sv_fit sv_fit;

const char* sv_version(void);

/* Thread-local message for the last failing call on this thread; empty string
 * when no failure has occurred. */
const char* sv_last_error(void);

/* ---- configuration ---------------------------------------------------- */

/* Defaults reproduce the full-scale study settings (chains=4, iter=2000,
 * warmup=500, n_boot=30, block_len=4, ridge lambda=0.1, seed=123). */
sv_config* sv_config_new(void);
void sv_config_free(sv_config* cfg);

/* Loads a flat key = value file ('#' comments). */
sv_status sv_config_load_file(sv_config* cfg, const char* path);

/* Sets one key (same keys as the config file, e.g. "profile", "methods",
 * "seed", "out_dir", "d", "chains"). Values are parsed from strings. */
sv_status sv_config_set(sv_config* cfg, const char* key, const char* value);

/* ---- batch runs (the CLI surface) -------------------------------------- */

/* Simulation study for scenario 1..3: replication loop, all configured
 * methods, CSV outputs plus a plain-text report under the configured
 * output directory. */
sv_status sv_run_scenario(const sv_config* cfg, int scenario);

/* Lag-order experiment p = 1..12 on the bundled quarterly dataset. */
sv_status sv_run_canada(const sv_config* cfg);

/* Re-aggregates summary files from per-replication CSVs in in_dir, writing
 * into out_dir (pass NULL to write back into in_dir). */
sv_status sv_report(const char* in_dir, const char* out_dir);

/* ---- series ------------------------------------------------------------ */

/* Copies a rows x cols row-major buffer. */
sv_series* sv_series_new(const double* values, int rows, int cols);
void sv_series_free(sv_series* series);
int sv_series_rows(const sv_series* series);
int sv_series_cols(const sv_series* series);
sv_status sv_series_get(const sv_series* series, double* out /* rows*cols, row-major */);

/* Simulated replication of a scenario: training series, hold-out series, and
 * the true coefficients at the fitted lag order (canonical flat order,
 * length d*d*p_fit). Any output pointer may be NULL to skip it. */
sv_status sv_simulate(const sv_config* cfg, int scenario, int rep_index, sv_series** train_out,
                      sv_series** test_out, double* b_true_out);

/* ---- single fits -------------------------------------------------------- */

/* Fits one method ("Horseshoe", "Lasso", "Normal", "ns", "Ridge") to a series
 * at lag order p. Frequentist intervals use the configured block bootstrap;
 * Bayesian fits use the configured MCMC settings with `seed` driving all
 * randomness. */
sv_status sv_fit_series(const sv_config* cfg, const sv_series* train, const char* method, int p,
                        uint64_t seed, sv_fit** fit_out);

void sv_fit_free(sv_fit* fit);
int sv_fit_coef_count(const sv_fit* fit);
sv_status sv_fit_point(const sv_fit* fit, double* out /* coef_count */);
sv_status sv_fit_interval(const sv_fit* fit, double* lower, double* upper);

/* Sequential one-step-ahead forecasts over `actuals`, conditioning on
 * realized data only; predictions are horizon x d row-major. */
sv_status sv_fit_forecast(const sv_fit* fit, const sv_series* history, const sv_series* actuals,
                          double* predictions_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SHRINKVAR_H */
