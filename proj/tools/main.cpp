// Batch CLI for the shrinkvar library. Talks to the shared library through
// the C API only.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "shrinkvar/shrinkvar.h"

namespace {

const char* status_category(sv_status s) {
  switch (s) {
    case SV_OK: return "ok";
    case SV_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SV_ERR_LENGTH: return "length";
    case SV_ERR_INSUFFICIENT_DATA: return "insufficient-data";
    case SV_ERR_RANK_DEFICIENT: return "rank-deficient";
    case SV_ERR_DOMAIN: return "domain";
    case SV_ERR_SAMPLER: return "sampler";
    case SV_ERR_IO: return "io";
    case SV_ERR_UNDEFINED_METRIC: return "undefined-metric";
    case SV_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

int finish(sv_status s) {
  if (s == SV_OK) return 0;
  std::fprintf(stderr, "error: %s: %s\n", status_category(s), sv_last_error());
  return static_cast<int>(s);
}

struct ConfigHandle {
  sv_config* cfg = sv_config_new();
  ~ConfigHandle() { sv_config_free(cfg); }
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
  ConfigHandle() = default;
};

// Applies config file first, then flags, then raw --set pairs: flags win
// over file values, --set wins over everything.
sv_status apply_options(sv_config* cfg, const std::string& config_file,
                        const std::vector<std::pair<std::string, std::string>>& flag_values,
                        const std::vector<std::string>& set_pairs) {
  if (!config_file.empty()) {
    if (sv_status s = sv_config_load_file(cfg, config_file.c_str()); s != SV_OK) return s;
  }
  for (const auto& [key, value] : flag_values) {
    if (sv_status s = sv_config_set(cfg, key.c_str(), value.c_str()); s != SV_OK) return s;
  }
  for (const auto& pair : set_pairs) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: invalid-argument: --set expects key=value, got '%s'\n",
                   pair.c_str());
      return SV_ERR_INVALID_ARGUMENT;
    }
    if (sv_status s = sv_config_set(cfg, pair.substr(0, eq).c_str(), pair.substr(eq + 1).c_str());
        s != SV_OK)
      return s;
  }
  return SV_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-dimensional VAR shrinkage benchmark"};
  app.require_subcommand(1);

  // simulate ------------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "Run a simulation scenario");
  int scenario = 1;
  std::string sim_profile, sim_methods, sim_seed, sim_out, sim_config, sim_reps;
  std::vector<std::string> sim_sets;
  simulate->add_option("--scenario", scenario, "Scenario preset (1|2|3)")
      ->check(CLI::Range(1, 3))
      ->required();
  simulate->add_option("--profile", sim_profile, "desk or paper (default: paper-scale settings)");
  simulate->add_option("--methods", sim_methods, "Comma list: Horseshoe,Lasso,Normal,ns,Ridge");
  simulate->add_option("--seed", sim_seed, "Base seed");
  simulate->add_option("--out", sim_out, "Output directory");
  simulate->add_option("--reps", sim_reps, "Replication count override");
  simulate->add_option("--config", sim_config, "Flat key=value config file");
  simulate->add_option("--set", sim_sets, "Extra key=value overrides")->take_all();

  // canada ---------------------------------------------------------------
  auto* canada = app.add_subcommand("canada", "Lag-order experiment on the quarterly dataset");
  std::string can_out, can_data, can_profile, can_methods, can_seed, can_config;
  std::vector<std::string> can_sets;
  canada->add_option("--out", can_out, "Output directory");
  canada->add_option("--data", can_data, "Dataset CSV path (default data/canada.csv)");
  canada->add_option("--profile", can_profile, "desk or paper MCMC settings");
  canada->add_option("--methods", can_methods, "Comma list of methods");
  canada->add_option("--seed", can_seed, "Base seed");
  canada->add_option("--config", can_config, "Flat key=value config file");
  canada->add_option("--set", can_sets, "Extra key=value overrides")->take_all();

  // report ---------------------------------------------------------------
  auto* report = app.add_subcommand("report", "Re-aggregate summaries from per-replication CSVs");
  std::string rep_in, rep_out;
  report->add_option("--in", rep_in, "Directory with evalrecords/lag-table CSVs")->required();
  report->add_option("--out", rep_out, "Output directory (default: --in)");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    ConfigHandle handle;
    std::vector<std::pair<std::string, std::string>> flags;
    if (!sim_profile.empty()) flags.emplace_back("profile", sim_profile);
    if (!sim_methods.empty()) flags.emplace_back("methods", sim_methods);
    if (!sim_seed.empty()) flags.emplace_back("seed", sim_seed);
    if (!sim_reps.empty()) flags.emplace_back("n_rep", sim_reps);
    if (!sim_out.empty()) flags.emplace_back("out_dir", sim_out);
    if (sv_status s = apply_options(handle.cfg, sim_config, flags, sim_sets); s != SV_OK)
      return finish(s);
    return finish(sv_run_scenario(handle.cfg, scenario));
  }

  if (canada->parsed()) {
    ConfigHandle handle;
    std::vector<std::pair<std::string, std::string>> flags;
    if (!can_profile.empty()) flags.emplace_back("profile", can_profile);
    if (!can_methods.empty()) flags.emplace_back("methods", can_methods);
    if (!can_seed.empty()) flags.emplace_back("seed", can_seed);
    if (!can_data.empty()) flags.emplace_back("canada_csv", can_data);
    if (!can_out.empty()) flags.emplace_back("out_dir", can_out);
    if (sv_status s = apply_options(handle.cfg, can_config, flags, can_sets); s != SV_OK)
      return finish(s);
    return finish(sv_run_canada(handle.cfg));
  }

  return finish(sv_report(rep_in.c_str(), rep_out.empty() ? nullptr : rep_out.c_str()));
}
