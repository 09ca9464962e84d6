#pragma once

#include <cstdint>
#include <string>

#include "shrinkvar/rng.hpp"
#include "shrinkvar/types.hpp"

namespace shrinkvar {

// One Monte Carlo scenario: generator shape plus replication constants.
struct ScenarioConfig {
  int d = 3;
  int p_star = 1;          // true lag order
  int p_fit = 4;           // fitted lag order, >= p_star
  double sparsity = 0.70;  // probability an A_1 entry is exactly zero
  double sigma_eps2 = 0.05;
  int t_train = 180;
  int horizon = 20;
  int burn_in = 50;
  int n_rep = 50;
  std::uint64_t base_seed = 123;

  void validate() const;

  static ScenarioConfig scenario1() { return {3, 1, 4, 0.70, 0.05}; }
  static ScenarioConfig scenario2() { return {20, 1, 1, 0.70, 0.10}; }
  static ScenarioConfig scenario3() { return {20, 1, 4, 0.70, 0.10}; }
  static ScenarioConfig preset(int id);
};

// One simulated dataset: contiguous train/test split and the generating
// coefficients padded to the fitted lag order (true A_1 in block 1, exact
// zero blocks for lags 2..p_fit).
struct Replication {
  SeriesMatrix train;    // t_train x d
  SeriesMatrix test;     // horizon x d
  CoefMatrix b_true;     // at p_fit
  std::uint64_t seed;    // seed_stream(base_seed, rep_index)
};

// Entries independently zero with probability `sparsity`, else Uniform(-0.4, 0.4).
Matrix draw_coefficients(Rng& rng, int d, double sparsity);

// A_1 <- A_1 / (1.1 * rho_max); returned unchanged when rho_max < 1e-12
// (all-zero or nilpotent draws would otherwise divide by zero).
Matrix rescale_stationary(const Matrix& a1);

// Deterministic function of (config, rep_index): draws the generator, runs
// the recursion from zero through burn_in + t_train + horizon steps with
// N(0, sigma_eps2 * I) innovations, discards the burn-in, splits the rest.
Replication simulate_replication(const ScenarioConfig& config, int rep_index);

// Writes train rows, test rows, and a true-coefficient sidecar:
// <prefix>_train.csv, <prefix>_test.csv, <prefix>_truth.csv.
void export_replication(const Replication& rep, const std::string& path_prefix);

}  // namespace shrinkvar
