#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdclt/config.hpp"
#include "hdclt/core_data.hpp"
#include "hdclt/reports.hpp"
#include "hdclt/rng.hpp"

namespace hdclt {

enum class DRule { fixed, cube_root, fifth_root };

struct ExperimentConfig {
  std::string experiment;
  GeneratorSpec generator;
  std::vector<long> n_grid;
  DRule d_rule = DRule::fixed;
  long d_fixed = 100;
  double c = 0.25;            // d-rule constant and Proposition-1 c
  long reps = 10000;
  long R = 2000;              // bootstrap replications
  long K = 1000;              // rectangle count
  long data_draws = 20;       // independent data draws for trend averaging
  double gamma = -2.0;        // skewness for lowerbound/cramer
  double x = 2.0;             // tail point for cramer
  double factor_loading = 0.5;  // equal loading for per-cell factor specs
  double epsilon_scale = 0.25;  // eps = scale * IQR of the reference max
  double alpha = 0.10;
  std::uint64_t master_seed = 20240817;
  int threads = 1;
  std::string out_dir = ".";
  // Planning budgets; exceeding either raises planning_error before any work.
  double max_draws = 2.0e11;    // total scalar variates in one experiment
  double max_doubles = 4.0e8;   // largest resident matrix

  static ExperimentConfig from(const Config& cfg);
  long d_for(long n) const;
  void plan_check(double total_draws, double resident_doubles) const;
};

/// Numeric result table; every runner emits one with a fixed header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// reps x d draws of S_n = n^{-1/2} sum_i X_i. Exact Gaussian fast paths for
/// the gaussian and factor_model families; bulk column sums otherwise.
Eigen::MatrixXd normalized_sum_sample(const GeneratorSpec& spec, long n, long d,
                                      long reps, RngStream& rng);

Table run_convergence_sweep(const ExperimentConfig& cfg);
Table run_factor_sweep(const ExperimentConfig& cfg);
Table run_lower_bound_demo(const ExperimentConfig& cfg);
Table run_cramer_ratio_check(const ExperimentConfig& cfg);
Table run_lindeberg_swap(const ExperimentConfig& cfg);
Table run_stein_route(const ExperimentConfig& cfg);
Table run_bootstrap_coverage(const ExperimentConfig& cfg);
Table run_bootstrap_trend(const ExperimentConfig& cfg);
BoundReport run_bound_report(const ExperimentConfig& cfg);

/// CSV with the fixed header and all floats at 17 significant digits.
void write_csv(const std::string& path, const Table& table);

/// Experiment provenance: config hash, seed, versions, wall time.
void write_manifest(const std::string& path, const Config& cfg,
                    std::uint64_t seed, double wall_seconds);

std::string bound_report_json(const BoundReport& report);

double fitted_loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace hdclt
