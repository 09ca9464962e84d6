#include "shrinkvar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "shrinkvar/bootstrap.hpp"
#include "shrinkvar/csv.hpp"
#include "shrinkvar/errors.hpp"
#include "shrinkvar/forecasting.hpp"
#include "shrinkvar/freq_estimators.hpp"
#include "shrinkvar/stats.hpp"
#include "shrinkvar/var_core.hpp"

namespace shrinkvar {

namespace {

constexpr std::uint64_t kBootSeedTag = 0xB007;
constexpr std::uint64_t kMcmcSeedTag = 0x3C3C;
constexpr std::uint64_t kCanadaSeedTag = 0xCA4ADA;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int method_index(Method m) {
  for (std::size_t i = 0; i < std::size(kAllMethods); ++i)
    if (kAllMethods[i] == m) return static_cast<int>(i);
  return -1;
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw std::invalid_argument("config key '" + key + "': expected on/off, got '" + v + "'");
}

std::vector<Method> parse_methods(const std::string& v) {
  std::vector<Method> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(method_from_name(item));
  }
  if (out.empty()) throw std::invalid_argument("methods: empty selection");
  return out;
}

// Runs fn(0..n_tasks-1) on a bounded pool; fn must not throw.
void parallel_for(int n_tasks, int n_workers, const std::function<void(int)>& fn) {
  if (n_workers <= 1 || n_tasks <= 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_tasks) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(n_workers, n_tasks); ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

double masked_or_nan(const std::function<double(const std::optional<IndexMask>&)>& metric,
                     const IndexMask& mask) {
  if (mask.empty()) return kNaN;
  return metric(mask);
}

double nan_mean(const std::vector<double>& xs) {
  double s = 0.0;
  int n = 0;
  for (double x : xs)
    if (!std::isnan(x)) {
      s += x;
      ++n;
    }
  return n > 0 ? s / n : kNaN;
}

double nan_sd(const std::vector<double>& xs) {
  std::vector<double> clean;
  for (double x : xs)
    if (!std::isnan(x)) clean.push_back(x);
  if (clean.size() < 2) return kNaN;
  return stats::sample_sd(clean);
}

}  // namespace

void RunConfig::apply_profile(const std::string& name) {
  if (name == "paper") {
    n_rep = 0;
    n_chains = 4;
    n_iter = 2000;
    n_warmup = 500;
  } else if (name == "desk") {
    n_rep = 10;
    n_chains = 2;
    n_iter = 1000;
    n_warmup = 250;
  } else {
    throw std::invalid_argument("unknown profile '" + name + "' (expected desk or paper)");
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  try {
    if (key == "profile") apply_profile(value);
    else if (key == "methods") methods = parse_methods(value);
    else if (key == "n_rep") n_rep = std::stoi(value);
    else if (key == "chains") n_chains = std::stoi(value);
    else if (key == "iter") n_iter = std::stoi(value);
    else if (key == "warmup") n_warmup = std::stoi(value);
    else if (key == "n_boot") n_boot = std::stoi(value);
    else if (key == "block_len") block_len = std::stoi(value);
    else if (key == "ridge_lambda") ridge_lambda = std::stod(value);
    else if (key == "ns_center") ns_center = parse_bool(value, key);
    else if (key == "seed") base_seed = std::stoull(value);
    else if (key == "out_dir") out_dir = value;
    else if (key == "workers") n_workers = std::stoi(value);
    else if (key == "export_replications") export_replications = parse_bool(value, key);
    else if (key == "canada_csv") canada_csv = value;
    else if (key == "canada_max_lag") canada_max_lag = std::stoi(value);
    else if (key == "d") d_override = std::stoi(value);
    else if (key == "p_star") p_star_override = std::stoi(value);
    else if (key == "p_fit") p_fit_override = std::stoi(value);
    else if (key == "sparsity") sparsity_override = std::stod(value);
    else if (key == "sigma_eps2") sigma_eps2_override = std::stod(value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': cannot parse value '" + value + "'");
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw IoError(path + ":" + std::to_string(lineno) + ": expected key = value");
    set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
}

ScenarioConfig RunConfig::make_scenario(int scenario_id) const {
  ScenarioConfig s = ScenarioConfig::preset(scenario_id);
  if (d_override) s.d = *d_override;
  if (p_star_override) s.p_star = *p_star_override;
  if (p_fit_override) s.p_fit = *p_fit_override;
  if (sparsity_override) s.sparsity = *sparsity_override;
  if (sigma_eps2_override) s.sigma_eps2 = *sigma_eps2_override;
  if (n_rep > 0) s.n_rep = n_rep;
  s.base_seed = base_seed;
  s.validate();
  return s;
}

McmcSettings RunConfig::make_mcmc(std::uint64_t seed) const {
  McmcSettings m;
  m.n_chains = n_chains;
  m.n_iter = n_iter;
  m.n_warmup = n_warmup;
  m.seed = seed;
  return m;
}

int RunConfig::resolve_workers(int n_tasks) const {
  int w = n_workers;
  if (w <= 0) {
    if (const char* env = std::getenv(kWorkersEnvVar)) w = std::atoi(env);
  }
  if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
  if (w <= 0) w = 1;
  return std::min(w, std::max(n_tasks, 1));
}

namespace {

FitResult fit_one_method(const RunConfig& config, const LaggedDesign& design,
                         std::uint64_t data_seed, Method m) {
  switch (m) {
    case Method::Ridge:
    case Method::NS: {
      // ridge_lambda is a per-observation weight: the penalty in the fitted
      // objective is ridge_lambda * rows, so shrinkage strength does not
      // vanish as the sample grows.
      const double lambda = config.ridge_lambda * static_cast<double>(design.rows());
      const auto fitter = [&config, m, lambda](const LaggedDesign& d) {
        return m == Method::Ridge ? ridge_fit(d, lambda).b_hat.flat()
                                  : ns_fit(d, config.ns_center).b_hat.flat();
      };
      const Vector point = fitter(design);
      Rng boot_rng(seed_stream(data_seed, kBootSeedTag + static_cast<std::uint64_t>(method_index(m))));
      const Vector se = bootstrap_se(fitter, design, config.n_boot, config.block_len, boot_rng);
      const IntervalSet iv = normal_interval(point, se);
      return FitResult{m, CoefMatrix::FromFlat(design.spec, point), iv.lower, iv.upper};
    }
    case Method::Horseshoe:
    case Method::Lasso:
    case Method::Normal: {
      const PriorKind prior = m == Method::Horseshoe ? PriorKind::horseshoe()
                              : m == Method::Lasso   ? PriorKind::lasso()
                                                     : PriorKind::normal();
      const McmcSettings settings = config.make_mcmc(
          seed_stream(data_seed, kMcmcSeedTag + static_cast<std::uint64_t>(method_index(m))));
      return fit_bayes(design, prior, settings);
    }
  }
  throw std::logic_error("fit_one_method: unreachable");
}

}  // namespace

std::vector<EvalRecord> evaluate_replication(const RunConfig& config,
                                             const ScenarioConfig& scenario, int scenario_id,
                                             int rep_index) {
  const Replication rep = simulate_replication(scenario, rep_index);
  const LaggedDesign design = build_design(rep.train, scenario.p_fit);
  const Vector beta_true = rep.b_true.flat();
  const IndexMask zmask = zero_mask(beta_true);
  const IndexMask nzmask = nonzero_mask(beta_true);

  std::vector<EvalRecord> records;
  for (Method m : kAllMethods) {
    if (std::find(config.methods.begin(), config.methods.end(), m) == config.methods.end())
      continue;
    const FitResult fit = fit_one_method(config, design, rep.seed, m);
    ForecastSet fs = sequential_forecast(fit.coef, rep.train, rep.test);
    fs.method = m;

    const Vector beta_hat = fit.coef.flat();
    EvalRecord r;
    r.scenario = scenario_id;
    r.replication = rep_index;
    r.method = m;
    r.param_rmse_all = param_rmse(beta_hat, beta_true);
    r.param_rmse_zero = masked_or_nan(
        [&](const auto& mk) { return param_rmse(beta_hat, beta_true, mk); }, zmask);
    r.param_rmse_nonzero = masked_or_nan(
        [&](const auto& mk) { return param_rmse(beta_hat, beta_true, mk); }, nzmask);
    r.coverage_all = coverage(fit.lower, fit.upper, beta_true);
    r.coverage_zero = masked_or_nan(
        [&](const auto& mk) { return coverage(fit.lower, fit.upper, beta_true, mk); }, zmask);
    r.coverage_nonzero = masked_or_nan(
        [&](const auto& mk) { return coverage(fit.lower, fit.upper, beta_true, mk); }, nzmask);
    r.mean_len_all = mean_interval_length(fit.lower, fit.upper);
    r.mean_len_zero = masked_or_nan(
        [&](const auto& mk) { return mean_interval_length(fit.lower, fit.upper, mk); }, zmask);
    r.mean_len_nonzero = masked_or_nan(
        [&](const auto& mk) { return mean_interval_length(fit.lower, fit.upper, mk); }, nzmask);
    r.forecast_rmse = forecast_rmse(fs);
    records.push_back(r);
  }
  return records;
}

namespace {

const std::vector<std::string> kEvalHeader = {
    "scenario",          "replication",     "method",
    "param_rmse_all",    "param_rmse_zero", "param_rmse_nonzero",
    "coverage_all",      "coverage_zero",   "coverage_nonzero",
    "mean_len_all",      "mean_len_zero",   "mean_len_nonzero",
    "forecast_rmse"};

std::vector<std::string> eval_record_fields(const EvalRecord& r) {
  using csv::format_double;
  return {csv::format_int(r.scenario),
          csv::format_int(r.replication),
          method_name(r.method),
          format_double(r.param_rmse_all),
          format_double(r.param_rmse_zero),
          format_double(r.param_rmse_nonzero),
          format_double(r.coverage_all),
          format_double(r.coverage_zero),
          format_double(r.coverage_nonzero),
          format_double(r.mean_len_all),
          format_double(r.mean_len_zero),
          format_double(r.mean_len_nonzero),
          format_double(r.forecast_rmse)};
}

void write_eval_records(const std::vector<EvalRecord>& records, const std::string& path) {
  csv::Writer w(path);
  w.row(kEvalHeader);
  for (const auto& r : records) w.row(eval_record_fields(r));
}

}  // namespace

std::vector<EvalRecord> read_eval_records(const std::string& path) {
  const csv::Table table = csv::read(path);
  if (table.header != kEvalHeader) throw IoError("unexpected eval record header in " + path);
  std::vector<EvalRecord> records;
  for (const auto& row : table.rows) {
    if (row.size() != kEvalHeader.size()) throw IoError("short row in " + path);
    EvalRecord r;
    r.scenario = std::stoi(row[0]);
    r.replication = std::stoi(row[1]);
    r.method = method_from_name(row[2]);
    r.param_rmse_all = csv::parse_double(row[3], path);
    r.param_rmse_zero = csv::parse_double(row[4], path);
    r.param_rmse_nonzero = csv::parse_double(row[5], path);
    r.coverage_all = csv::parse_double(row[6], path);
    r.coverage_zero = csv::parse_double(row[7], path);
    r.coverage_nonzero = csv::parse_double(row[8], path);
    r.mean_len_all = csv::parse_double(row[9], path);
    r.mean_len_zero = csv::parse_double(row[10], path);
    r.mean_len_nonzero = csv::parse_double(row[11], path);
    r.forecast_rmse = csv::parse_double(row[12], path);
    records.push_back(r);
  }
  return records;
}

ScenarioRunResult run_scenario(const RunConfig& config, int scenario_id) {
  const ScenarioConfig scenario = config.make_scenario(scenario_id);
  std::filesystem::create_directories(config.out_dir);

  ScenarioRunResult result;
  result.n_rep = scenario.n_rep;
  std::vector<std::vector<EvalRecord>> per_rep(scenario.n_rep);
  std::vector<std::string> failure_slots(scenario.n_rep);

  const int workers = config.resolve_workers(scenario.n_rep);
  parallel_for(scenario.n_rep, workers, [&](int i) {
    try {
      per_rep[i] = evaluate_replication(config, scenario, scenario_id, i);
    } catch (const std::exception& e) {
      const std::uint64_t seed = seed_stream(scenario.base_seed, static_cast<std::uint64_t>(i));
      failure_slots[i] = "replication=" + std::to_string(i) + " seed=" + std::to_string(seed) +
                         ": " + e.what();
    }
  });

  for (int i = 0; i < scenario.n_rep; ++i) {
    if (!failure_slots[i].empty()) {
      result.failures.push_back(failure_slots[i]);
      std::fprintf(stderr, "warning: skipped %s\n", failure_slots[i].c_str());
    } else {
      result.records.insert(result.records.end(), per_rep[i].begin(), per_rep[i].end());
    }
  }
  if (static_cast<double>(result.failures.size()) > 0.10 * scenario.n_rep) {
    std::string msg = "run_scenario: " + std::to_string(result.failures.size()) + "/" +
                      std::to_string(scenario.n_rep) + " replications failed";
    for (const auto& f : result.failures) msg += "\n  " + f;
    throw std::runtime_error(msg);
  }

  if (config.export_replications) {
    for (int i = 0; i < scenario.n_rep; ++i) {
      if (!failure_slots[i].empty()) continue;
      export_replication(simulate_replication(scenario, i),
                         config.out_dir + "/replication_scenario" + std::to_string(scenario_id) +
                             "_" + std::to_string(i));
    }
  }

  write_eval_records(result.records, config.out_dir + "/evalrecords_scenario" +
                                         std::to_string(scenario_id) + ".csv");
  emit_scenario_report(result.records, scenario_id, config.out_dir);
  return result;
}

// --- Canada ------------------------------------------------------------------

const char* CanadaDataset::column_name(int c) {
  static constexpr const char* names[] = {"e", "prod", "rw", "U"};
  return names[c];
}

CanadaDataset load_canada(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw IoError("Canada dataset not found at expected path: " + path);
  const csv::Table table = csv::read(path);
  const bool labeled = table.header.size() == 5;
  if (!(labeled || table.header.size() == 4))
    throw IoError("Canada dataset: expected 4 series columns (plus optional quarter label)");
  if (table.rows.size() != CanadaDataset::kRows)
    throw IoError("Canada dataset: expected exactly 84 rows, got " +
                  std::to_string(table.rows.size()));

  CanadaDataset data;
  data.values.resize(CanadaDataset::kRows, CanadaDataset::kCols);
  for (int r = 0; r < CanadaDataset::kRows; ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size()) throw IoError("Canada dataset: ragged row");
    if (labeled) data.quarters.push_back(row[0]);
    for (int c = 0; c < CanadaDataset::kCols; ++c) {
      const double v = csv::parse_double(row[labeled + c], path);
      if (!std::isfinite(v)) throw IoError("Canada dataset: non-finite value");
      data.values(r, c) = v;
    }
  }
  const auto u = data.values.col(3);
  if (u.minCoeff() <= 0.0 || u.maxCoeff() >= 30.0)
    throw IoError("Canada dataset: U column does not look like percent units");
  return data;
}

void holdout_errors(const Matrix& predicted, const Matrix& actual, Vector& rmse_out,
                    Vector& mape_out, std::vector<std::string>* warnings) {
  if (predicted.rows() != actual.rows() || predicted.cols() != actual.cols())
    throw std::invalid_argument("holdout_errors: shape mismatch");
  const auto H = actual.rows();
  const auto d = actual.cols();
  rmse_out.resize(d);
  mape_out.resize(d);
  for (Eigen::Index c = 0; c < d; ++c) {
    double ss = 0.0;
    double ape = 0.0;
    int valid = 0;
    for (Eigen::Index h = 0; h < H; ++h) {
      const double err = actual(h, c) - predicted(h, c);
      ss += err * err;
      if (std::abs(actual(h, c)) < 1e-9) {
        if (warnings)
          warnings->push_back("MAPE: excluded near-zero actual at step " + std::to_string(h + 1) +
                              ", series " + std::to_string(c + 1));
        continue;
      }
      ape += std::abs(err / actual(h, c));
      ++valid;
    }
    rmse_out(c) = std::sqrt(ss / static_cast<double>(H));
    mape_out(c) = valid > 0 ? 100.0 * ape / static_cast<double>(valid) : kNaN;
  }
}

CanadaRunResult run_canada(const RunConfig& config) {
  const CanadaDataset data = load_canada(config.canada_csv);
  std::filesystem::create_directories(config.out_dir);

  constexpr int kHoldout = 4;
  const Matrix diffs = difference(data.values);
  const Matrix train = diffs.topRows(diffs.rows() - kHoldout);
  const Matrix test_diffs = diffs.bottomRows(kHoldout);
  const Matrix anchors = data.values.middleRows(data.values.rows() - kHoldout - 1, kHoldout);
  const Matrix actuals = data.values.bottomRows(kHoldout);

  struct Task {
    Method method;
    int p;
  };
  std::vector<Task> tasks;
  for (Method m : kAllMethods) {
    if (std::find(config.methods.begin(), config.methods.end(), m) == config.methods.end())
      continue;
    for (int p = 1; p <= config.canada_max_lag; ++p) tasks.push_back({m, p});
  }

  std::vector<CanadaCell> cells(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::vector<std::vector<std::string>> warn_slots(tasks.size());

  const int workers = config.resolve_workers(static_cast<int>(tasks.size()));
  parallel_for(static_cast<int>(tasks.size()), workers, [&](int t) {
    const auto [m, p] = tasks[t];
    try {
      const LaggedDesign design = build_design(train, p);
      CoefMatrix coef = CoefMatrix::Zero(design.spec);
      switch (m) {
        case Method::Ridge:
          // Per-observation penalty weight, as in the scenario runs.
          coef = ridge_fit(design, config.ridge_lambda * static_cast<double>(design.rows())).b_hat;
          break;
        case Method::NS: coef = ns_fit(design, config.ns_center).b_hat; break;
        default: {
          const PriorKind prior = m == Method::Horseshoe ? PriorKind::horseshoe()
                                  : m == Method::Lasso   ? PriorKind::lasso()
                                                         : PriorKind::normal();
          const std::uint64_t seed = seed_stream(
              seed_stream(config.base_seed, kCanadaSeedTag),
              static_cast<std::uint64_t>(p * 8 + method_index(m)));
          coef = fit_bayes(design, prior, config.make_mcmc(seed)).coef;
        }
      }
      const ForecastSet fs = sequential_forecast(coef, train, test_diffs);
      const Matrix levels = invert_difference_realized(anchors, fs.predictions);
      CanadaCell cell{m, p, 0.0, 0.0, Vector(), Vector()};
      holdout_errors(levels, actuals, cell.rmse_by_series, cell.mape_by_series, &warn_slots[t]);
      cell.rmse = cell.rmse_by_series.mean();
      cell.mape = cell.mape_by_series.mean();
      cells[t] = std::move(cell);
    } catch (const std::exception& e) {
      errors[t] = std::string("method=") + method_name(m) + " p=" + std::to_string(p) + ": " +
                  e.what();
    }
  });

  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("run_canada: " + e);

  CanadaRunResult result;
  result.table = std::move(cells);
  std::sort(result.table.begin(), result.table.end(), [](const CanadaCell& a, const CanadaCell& b) {
    if (method_index(a.method) != method_index(b.method))
      return method_index(a.method) < method_index(b.method);
    return a.p < b.p;
  });
  for (auto& slot : warn_slots)
    result.warnings.insert(result.warnings.end(), slot.begin(), slot.end());

  for (Method m : kAllMethods) {
    std::vector<double> rmse, mape;
    for (const auto& c : result.table)
      if (c.method == m) {
        rmse.push_back(c.rmse);
        mape.push_back(c.mape);
      }
    if (rmse.empty()) continue;
    if (rmse.size() == 12) {
      result.summary[m] = lag_sweep_stats(rmse, mape);
    } else {
      LagSweepStats s;
      s.mean_rmse = stats::mean(rmse);
      s.sd_rmse = rmse.size() > 1 ? stats::sample_sd(rmse) : kNaN;
      s.mean_mape = stats::mean(mape);
      s.sd_mape = mape.size() > 1 ? stats::sample_sd(mape) : kNaN;
      result.summary[m] = s;
    }
  }

  emit_canada_report(result, config.out_dir);
  return result;
}

// --- reports -------------------------------------------------------------------

namespace {

struct MethodSummary {
  double frmse_mean = kNaN, frmse_sd = kNaN;
  double prmse_mean = kNaN, prmse_sd = kNaN;
  double cov_mean = kNaN, len_mean = kNaN;
};

MethodSummary summarize_method(const std::vector<EvalRecord>& records, Method m,
                               double EvalRecord::* rmse_field, double EvalRecord::* cov_field,
                               double EvalRecord::* len_field, bool with_forecast) {
  std::vector<double> frmse, prmse, cov, len;
  for (const auto& r : records) {
    if (r.method != m) continue;
    frmse.push_back(r.forecast_rmse);
    prmse.push_back(r.*rmse_field);
    cov.push_back(r.*cov_field);
    len.push_back(r.*len_field);
  }
  MethodSummary s;
  if (prmse.empty()) return s;
  if (with_forecast) {
    s.frmse_mean = nan_mean(frmse);
    s.frmse_sd = nan_sd(frmse);
  }
  s.prmse_mean = nan_mean(prmse);
  s.prmse_sd = nan_sd(prmse);
  s.cov_mean = nan_mean(cov);
  s.len_mean = nan_mean(len);
  return s;
}

std::vector<Method> methods_present(const std::vector<EvalRecord>& records) {
  std::vector<Method> out;
  for (Method m : kAllMethods)
    for (const auto& r : records)
      if (r.method == m) {
        out.push_back(m);
        break;
      }
  return out;
}

void write_summary_csv(const std::vector<EvalRecord>& records, const std::string& path,
                       double EvalRecord::* rmse_field, double EvalRecord::* cov_field,
                       double EvalRecord::* len_field, bool with_forecast) {
  csv::Writer w(path);
  std::vector<std::string> header{"method"};
  if (with_forecast) {
    header.push_back("frmse_mean");
    header.push_back("frmse_sd");
  }
  header.insert(header.end(), {"prmse_mean", "prmse_sd", "cov_mean", "len_mean"});
  w.row(header);
  for (Method m : methods_present(records)) {
    const MethodSummary s = summarize_method(records, m, rmse_field, cov_field, len_field,
                                             with_forecast);
    std::vector<std::string> row{method_name(m)};
    if (with_forecast) {
      row.push_back(csv::format_double(s.frmse_mean));
      row.push_back(csv::format_double(s.frmse_sd));
    }
    row.push_back(csv::format_double(s.prmse_mean));
    row.push_back(csv::format_double(s.prmse_sd));
    row.push_back(csv::format_double(s.cov_mean));
    row.push_back(csv::format_double(s.len_mean));
    w.row(row);
  }
}

std::string fixed(double v, int width = 9, int prec = 4) {
  char buf[64];
  if (std::isnan(v)) std::snprintf(buf, sizeof(buf), "%*s", width, "-");
  else std::snprintf(buf, sizeof(buf), "%*.*f", width, prec, v);
  return buf;
}

}  // namespace

void emit_scenario_report(const std::vector<EvalRecord>& records, int scenario_id,
                          const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string suffix = "_scenario" + std::to_string(scenario_id) + ".csv";

  write_summary_csv(records, out_dir + "/summary_all" + suffix, &EvalRecord::param_rmse_all,
                    &EvalRecord::coverage_all, &EvalRecord::mean_len_all, true);
  write_summary_csv(records, out_dir + "/summary_zero" + suffix, &EvalRecord::param_rmse_zero,
                    &EvalRecord::coverage_zero, &EvalRecord::mean_len_zero, false);
  write_summary_csv(records, out_dir + "/summary_nonzero" + suffix,
                    &EvalRecord::param_rmse_nonzero, &EvalRecord::coverage_nonzero,
                    &EvalRecord::mean_len_nonzero, false);

  // Best-method tallies need all five methods per replication.
  {
    csv::Writer w(out_dir + "/times_best" + suffix);
    w.row({"method", "best_forecast_frac", "best_param_frac"});
    if (!records.empty() && methods_present(records).size() == std::size(kAllMethods)) {
      const BestTally tally = tally_best(records);
      for (Method m : kAllMethods)
        w.row({method_name(m), csv::format_double(tally.best_forecast.at(m)),
               csv::format_double(tally.best_param.at(m))});
      w.row({"# ties", csv::format_int(tally.forecast_ties), csv::format_int(tally.param_ties)});
    }
  }

  {
    csv::Writer w(out_dir + "/plot_long" + suffix);
    w.row({"method", "scenario", "replication", "metric", "value"});
    const std::pair<const char*, double EvalRecord::*> metrics[] = {
        {"forecast_rmse", &EvalRecord::forecast_rmse},
        {"param_rmse_all", &EvalRecord::param_rmse_all},
        {"coverage_all", &EvalRecord::coverage_all},
        {"mean_len_all", &EvalRecord::mean_len_all}};
    for (const auto& [name, field] : metrics)
      for (const auto& r : records)
        w.row({method_name(r.method), csv::format_int(r.scenario),
               csv::format_int(r.replication), name, csv::format_double(r.*field)});
  }

  {
    std::ofstream out(out_dir + "/report_scenario" + std::to_string(scenario_id) + ".txt",
                      std::ios::binary);
    if (!out) throw IoError("cannot write scenario report in " + out_dir);
    out << "Scenario " << scenario_id << " summary\n";
    if (records.empty()) {
      out << "no data\n";
      return;
    }
    const auto block = [&](const char* title, double EvalRecord::* rmse_field,
                           double EvalRecord::* cov_field, double EvalRecord::* len_field,
                           bool with_forecast) {
      out << "\n" << title << "\n";
      out << "method     ";
      if (with_forecast) out << "  frmse_mean   frmse_sd";
      out << "  prmse_mean   prmse_sd        cov   int_len\n";
      for (Method m : methods_present(records)) {
        const MethodSummary s =
            summarize_method(records, m, rmse_field, cov_field, len_field, with_forecast);
        char name[16];
        std::snprintf(name, sizeof(name), "%-11s", method_name(m));
        out << name;
        if (with_forecast) out << fixed(s.frmse_mean, 12) << fixed(s.frmse_sd, 11);
        out << fixed(s.prmse_mean, 12) << fixed(s.prmse_sd, 11) << fixed(s.cov_mean, 11)
            << fixed(s.len_mean, 10) << "\n";
      }
    };
    block("All coefficients", &EvalRecord::param_rmse_all, &EvalRecord::coverage_all,
          &EvalRecord::mean_len_all, true);
    block("Zero coefficients", &EvalRecord::param_rmse_zero, &EvalRecord::coverage_zero,
          &EvalRecord::mean_len_zero, false);
    block("Nonzero coefficients", &EvalRecord::param_rmse_nonzero, &EvalRecord::coverage_nonzero,
          &EvalRecord::mean_len_nonzero, false);
    if (methods_present(records).size() == std::size(kAllMethods)) {
      const BestTally tally = tally_best(records);
      out << "\nShare of replications with the best forecast / parameter RMSE\n";
      for (Method m : kAllMethods) {
        char name[16];
        std::snprintf(name, sizeof(name), "%-11s", method_name(m));
        out << name << fixed(tally.best_forecast.at(m), 10, 2)
            << fixed(tally.best_param.at(m), 10, 2) << "\n";
      }
      out << "ties: forecast=" << tally.forecast_ties << " param=" << tally.param_ties << "\n";
    }
  }
}

void emit_canada_report(const CanadaRunResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  {
    csv::Writer w(out_dir + "/canada_lag_table.csv");
    std::vector<std::string> header{"method", "p", "rmse", "mape"};
    for (int c = 0; c < CanadaDataset::kCols; ++c)
      header.push_back(std::string("rmse_") + CanadaDataset::column_name(c));
    for (int c = 0; c < CanadaDataset::kCols; ++c)
      header.push_back(std::string("mape_") + CanadaDataset::column_name(c));
    w.row(header);
    for (const auto& cell : result.table) {
      std::vector<std::string> row{method_name(cell.method), csv::format_int(cell.p),
                                   csv::format_double(cell.rmse), csv::format_double(cell.mape)};
      for (int c = 0; c < CanadaDataset::kCols; ++c)
        row.push_back(csv::format_double(cell.rmse_by_series(c)));
      for (int c = 0; c < CanadaDataset::kCols; ++c)
        row.push_back(csv::format_double(cell.mape_by_series(c)));
      w.row(row);
    }
  }

  {
    csv::Writer w(out_dir + "/canada_summary.csv");
    w.row({"method", "mean_rmse", "sd_rmse", "mean_mape", "sd_mape"});
    for (const auto& [m, s] : result.summary)
      w.row({method_name(m), csv::format_double(s.mean_rmse), csv::format_double(s.sd_rmse),
             csv::format_double(s.mean_mape), csv::format_double(s.sd_mape)});
  }

  {
    csv::Writer w(out_dir + "/canada_p11.csv");
    w.row({"method", "rmse", "mape"});
    for (const auto& cell : result.table)
      if (cell.p == 11)
        w.row({method_name(cell.method), csv::format_double(cell.rmse),
               csv::format_double(cell.mape)});
  }

  {
    csv::Writer w(out_dir + "/plot_long_canada.csv");
    w.row({"method", "p", "series", "metric", "value"});
    for (const auto& cell : result.table) {
      w.row({method_name(cell.method), csv::format_int(cell.p), "mean", "rmse",
             csv::format_double(cell.rmse)});
      w.row({method_name(cell.method), csv::format_int(cell.p), "mean", "mape",
             csv::format_double(cell.mape)});
      for (int c = 0; c < CanadaDataset::kCols; ++c) {
        w.row({method_name(cell.method), csv::format_int(cell.p), CanadaDataset::column_name(c),
               "rmse", csv::format_double(cell.rmse_by_series(c))});
        w.row({method_name(cell.method), csv::format_int(cell.p), CanadaDataset::column_name(c),
               "mape", csv::format_double(cell.mape_by_series(c))});
      }
    }
  }

  {
    std::ofstream out(out_dir + "/report_canada.txt", std::ios::binary);
    if (!out) throw IoError("cannot write Canada report in " + out_dir);
    out << "Canada lag sweep (one-step-ahead level forecasts, final 4 quarters)\n";
    if (result.table.empty()) {
      out << "no data\n";
      return;
    }
    out << "\nmethod       mean_rmse    sd_rmse  mean_mape    sd_mape\n";
    for (const auto& [m, s] : result.summary) {
      char name[16];
      std::snprintf(name, sizeof(name), "%-11s", method_name(m));
      out << name << fixed(s.mean_rmse, 11, 3) << fixed(s.sd_rmse, 11, 3)
          << fixed(s.mean_mape, 11, 3) << fixed(s.sd_mape, 11, 3) << "\n";
    }
    out << "\nVAR(11) hold-out errors\n";
    out << "method            rmse       mape\n";
    for (const auto& cell : result.table)
      if (cell.p == 11) {
        char name[16];
        std::snprintf(name, sizeof(name), "%-11s", method_name(cell.method));
        out << name << fixed(cell.rmse, 11, 3) << fixed(cell.mape, 11, 3) << "\n";
      }
    for (const auto& warning : result.warnings) out << "warning: " << warning << "\n";
  }
}

void regenerate_reports(const std::string& in_dir, const std::string& out_dir) {
  if (!std::filesystem::is_directory(in_dir))
    throw IoError("report input is not a directory: " + in_dir);
  bool found = false;
  std::vector<std::filesystem::path> entries;
  for (const auto& entry : std::filesystem::directory_iterator(in_dir))
    entries.push_back(entry.path());
  std::sort(entries.begin(), entries.end());

  for (const auto& path : entries) {
    const std::string name = path.filename().string();
    const std::string prefix = "evalrecords_scenario";
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size() + 4) {
      const int scenario_id = std::stoi(name.substr(prefix.size()));
      emit_scenario_report(read_eval_records(path.string()), scenario_id, out_dir);
      found = true;
    }
  }

  const auto lag_table = std::filesystem::path(in_dir) / "canada_lag_table.csv";
  if (std::filesystem::exists(lag_table)) {
    const csv::Table table = csv::read(lag_table.string());
    CanadaRunResult result;
    for (const auto& row : table.rows) {
      if (row.size() != 4 + 2 * CanadaDataset::kCols) throw IoError("short row in canada lag table");
      CanadaCell cell;
      cell.method = method_from_name(row[0]);
      cell.p = std::stoi(row[1]);
      cell.rmse = csv::parse_double(row[2], "canada lag table");
      cell.mape = csv::parse_double(row[3], "canada lag table");
      cell.rmse_by_series.resize(CanadaDataset::kCols);
      cell.mape_by_series.resize(CanadaDataset::kCols);
      for (int c = 0; c < CanadaDataset::kCols; ++c) {
        cell.rmse_by_series(c) = csv::parse_double(row[4 + c], "canada lag table");
        cell.mape_by_series(c) = csv::parse_double(row[4 + CanadaDataset::kCols + c],
                                                   "canada lag table");
      }
      result.table.push_back(std::move(cell));
    }
    for (Method m : kAllMethods) {
      std::vector<double> rmse, mape;
      for (const auto& c : result.table)
        if (c.method == m) {
          rmse.push_back(c.rmse);
          mape.push_back(c.mape);
        }
      if (rmse.size() == 12) result.summary[m] = lag_sweep_stats(rmse, mape);
    }
    emit_canada_report(result, out_dir);
    found = true;
  }
  if (!found) throw IoError("no evalrecords_scenario*.csv or canada_lag_table.csv in " + in_dir);
}

}  // namespace shrinkvar
