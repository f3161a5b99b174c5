#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hdclt/core_data.hpp"
#include "hdclt/multipliers.hpp"
#include "hdclt/reports.hpp"

namespace hdclt {

enum class BootstrapMode { full, max_only, absmax_only };

/// R wild-bootstrap draws S^WB = n^{-1/2} sum_i w_i (X_i - Xbar) conditional
/// on the data. `statistics` is R x d in full mode; in the compressed modes
/// only `max_stats` (max_j or max_j | . |, length R) is kept.
struct BootstrapRun {
  std::string law_name;
  long R = 0;
  BootstrapMode mode = BootstrapMode::full;
  Eigen::MatrixXd statistics;
  Eigen::VectorXd max_stats;
};

BootstrapRun wild_bootstrap(const SampleMatrix& data, const MultiplierLaw& law,
                            long R, RngStream& rng,
                            BootstrapMode mode = BootstrapMode::full);

/// Rectangle-family distance (dominating the max-class KS) between R bootstrap
/// draws conditional on `data` and R draws of the Gaussian analog N(0, C).
DistanceReport rho_wb_estimate(const SampleMatrix& data, const MultiplierLaw& law,
                               const CovarianceModel& C_target, long R,
                               RngStream& rng, long K = 1000);

struct SimultaneousBand {
  double critical_value = 0.0;  // c_alpha
  Eigen::VectorXd center;       // Xbar
  Eigen::VectorXd half_width;   // c_alpha sigma_j / sqrt(n)
  Eigen::VectorXd sigma;        // 1 if not studentized

  bool covers(const Eigen::VectorXd& mu) const;
};

/// c_alpha = empirical (1 - alpha) type-7 quantile of max_j |S^WB_j| / sigma_j.
SimultaneousBand simultaneous_band(const SampleMatrix& data,
                                   const MultiplierLaw& law, double alpha, long R,
                                   RngStream& rng, bool studentize);

/// Type-7 (linear interpolation) quantile of an unsorted copy.
double quantile_type7(std::vector<double> values, double p);

}  // namespace hdclt
