#include "shrinkvar/shrinkvar.h"

#include <cstring>
#include <string>

#include "shrinkvar/bayes_sampler.hpp"
#include "shrinkvar/bootstrap.hpp"
#include "shrinkvar/errors.hpp"
#include "shrinkvar/forecasting.hpp"
#include "shrinkvar/freq_estimators.hpp"
#include "shrinkvar/harness.hpp"
#include "shrinkvar/var_core.hpp"

using namespace shrinkvar;

struct sv_config {
  RunConfig impl;
};

struct sv_series {
  Matrix values;
};

struct sv_fit {
  FitResult result;
  RunConfig config;  // frozen at fit time; forecasting needs no settings
};

namespace {

thread_local std::string g_last_error;

sv_status fail(sv_status code, const char* what) {
  g_last_error = what ? what : "";
  return code;
}

// Maps the library's exception taxonomy onto status codes.
template <typename Fn>
sv_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SV_OK;
  } catch (const RankDeficiencyError& e) {
    return fail(SV_ERR_RANK_DEFICIENT, e.what());
  } catch (const InsufficientDataError& e) {
    return fail(SV_ERR_INSUFFICIENT_DATA, e.what());
  } catch (const SamplerError& e) {
    return fail(SV_ERR_SAMPLER, e.what());
  } catch (const IoError& e) {
    return fail(SV_ERR_IO, e.what());
  } catch (const UndefinedMetricError& e) {
    return fail(SV_ERR_UNDEFINED_METRIC, e.what());
  } catch (const std::length_error& e) {
    return fail(SV_ERR_LENGTH, e.what());
  } catch (const std::domain_error& e) {
    return fail(SV_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(SV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SV_ERR_INTERNAL, "unknown error");
  }
}

sv_status require(bool ok, const char* what) {
  return ok ? SV_OK : fail(SV_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* sv_version(void) { return "0.1.0"; }

const char* sv_last_error(void) { return g_last_error.c_str(); }

sv_config* sv_config_new(void) { return new sv_config{}; }

void sv_config_free(sv_config* cfg) { delete cfg; }

sv_status sv_config_load_file(sv_config* cfg, const char* path) {
  if (require(cfg && path, "sv_config_load_file: null argument") != SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  return guarded([&] { cfg->impl.load_file(path); });
}

sv_status sv_config_set(sv_config* cfg, const char* key, const char* value) {
  if (require(cfg && key && value, "sv_config_set: null argument") != SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  return guarded([&] { cfg->impl.set(key, value); });
}

sv_status sv_run_scenario(const sv_config* cfg, int scenario) {
  if (require(cfg != nullptr, "sv_run_scenario: null config") != SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  return guarded([&] { run_scenario(cfg->impl, scenario); });
}

sv_status sv_run_canada(const sv_config* cfg) {
  if (require(cfg != nullptr, "sv_run_canada: null config") != SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  return guarded([&] { run_canada(cfg->impl); });
}

sv_status sv_report(const char* in_dir, const char* out_dir) {
  if (require(in_dir != nullptr, "sv_report: null input directory") != SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  return guarded([&] { regenerate_reports(in_dir, out_dir ? out_dir : in_dir); });
}

sv_series* sv_series_new(const double* values, int rows, int cols) {
  if (!values || rows < 1 || cols < 1) return nullptr;
  auto* s = new sv_series;
  s->values.resize(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) s->values(r, c) = values[r * cols + c];
  return s;
}

void sv_series_free(sv_series* series) { delete series; }

int sv_series_rows(const sv_series* series) {
  return series ? static_cast<int>(series->values.rows()) : 0;
}

int sv_series_cols(const sv_series* series) {
  return series ? static_cast<int>(series->values.cols()) : 0;
}

sv_status sv_series_get(const sv_series* series, double* out) {
  if (require(series && out, "sv_series_get: null argument") != SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  for (Eigen::Index r = 0; r < series->values.rows(); ++r)
    for (Eigen::Index c = 0; c < series->values.cols(); ++c)
      out[r * series->values.cols() + c] = series->values(r, c);
  g_last_error.clear();
  return SV_OK;
}

sv_status sv_simulate(const sv_config* cfg, int scenario, int rep_index, sv_series** train_out,
                      sv_series** test_out, double* b_true_out) {
  if (require(cfg != nullptr, "sv_simulate: null config") != SV_OK) return SV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const ScenarioConfig sc = cfg->impl.make_scenario(scenario);
    const Replication rep = simulate_replication(sc, rep_index);
    if (train_out) *train_out = new sv_series{rep.train};
    if (test_out) *test_out = new sv_series{rep.test};
    if (b_true_out) {
      const Vector flat = rep.b_true.flat();
      std::memcpy(b_true_out, flat.data(), sizeof(double) * flat.size());
    }
  });
}

sv_status sv_fit_series(const sv_config* cfg, const sv_series* train, const char* method, int p,
                        uint64_t seed, sv_fit** fit_out) {
  if (require(cfg && train && method && fit_out, "sv_fit_series: null argument") != SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const Method m = method_from_name(method);
    const LaggedDesign design = build_design(train->values, p);
    FitResult result = [&] {
      switch (m) {
        case Method::Ridge:
        case Method::NS: {
          const auto fitter = [&](const LaggedDesign& d) {
            return m == Method::Ridge ? ridge_fit(d, cfg->impl.ridge_lambda).b_hat.flat()
                                      : ns_fit(d, cfg->impl.ns_center).b_hat.flat();
          };
          const Vector point = fitter(design);
          Rng rng(seed);
          const Vector se =
              bootstrap_se(fitter, design, cfg->impl.n_boot, cfg->impl.block_len, rng);
          const IntervalSet iv = normal_interval(point, se);
          return FitResult{m, CoefMatrix::FromFlat(design.spec, point), iv.lower, iv.upper};
        }
        default: {
          const PriorKind prior = m == Method::Horseshoe ? PriorKind::horseshoe()
                                  : m == Method::Lasso   ? PriorKind::lasso()
                                                         : PriorKind::normal();
          return fit_bayes(design, prior, cfg->impl.make_mcmc(seed));
        }
      }
    }();
    *fit_out = new sv_fit{std::move(result), cfg->impl};
  });
}

void sv_fit_free(sv_fit* fit) { delete fit; }

int sv_fit_coef_count(const sv_fit* fit) {
  return fit ? static_cast<int>(fit->result.coef.spec().coef_count()) : 0;
}

sv_status sv_fit_point(const sv_fit* fit, double* out) {
  if (require(fit && out, "sv_fit_point: null argument") != SV_OK) return SV_ERR_INVALID_ARGUMENT;
  const Vector flat = fit->result.coef.flat();
  std::memcpy(out, flat.data(), sizeof(double) * flat.size());
  g_last_error.clear();
  return SV_OK;
}

sv_status sv_fit_interval(const sv_fit* fit, double* lower, double* upper) {
  if (require(fit && lower && upper, "sv_fit_interval: null argument") != SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  std::memcpy(lower, fit->result.lower.data(), sizeof(double) * fit->result.lower.size());
  std::memcpy(upper, fit->result.upper.data(), sizeof(double) * fit->result.upper.size());
  g_last_error.clear();
  return SV_OK;
}

sv_status sv_fit_forecast(const sv_fit* fit, const sv_series* history, const sv_series* actuals,
                          double* predictions_out) {
  if (require(fit && history && actuals && predictions_out, "sv_fit_forecast: null argument") !=
      SV_OK)
    return SV_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const ForecastSet fs = sequential_forecast(fit->result.coef, history->values, actuals->values);
    for (Eigen::Index r = 0; r < fs.predictions.rows(); ++r)
      for (Eigen::Index c = 0; c < fs.predictions.cols(); ++c)
        predictions_out[r * fs.predictions.cols() + c] = fs.predictions(r, c);
  });
}

}  // extern "C"
