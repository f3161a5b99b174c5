#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace hdclt {

/// Estimated concentration probability sup_t P(t <= max_j F_j <= t + eps)
/// over the scalar-shift family y = t*1 (a lower bound for the vector-y sup).
struct ConcentrationEstimate {
  double epsilon = 0.0;
  double value = 0.0;
  double se = 0.0;
  std::string mode = "scalar_max";
};

struct ThetaEstimate {
  double value = 0.0;        // sup over grid of C(eps)/eps
  double argmax_epsilon = 0.0;
  bool unstable = false;     // argmax at smallest grid point with >2x growth
  std::vector<double> grid;
};

/// Sliding-window scan over sorted row maxima of `samples` (reps x d).
ConcentrationEstimate levy_concentration_scalar_max(const Eigen::MatrixXd& samples,
                                                    double epsilon);

/// Same, given precomputed max statistics.
ConcentrationEstimate levy_concentration_from_maxima(std::vector<double> maxima,
                                                     double epsilon);

ThetaEstimate theta_estimate(const Eigen::MatrixXd& samples,
                             const std::vector<double>& eps_grid);
ThetaEstimate theta_estimate_from_maxima(const std::vector<double>& maxima,
                                         const std::vector<double>& eps_grid);

/// Geometric 20-point default grid on [0.01, 1] * iqr of the maxima.
std::vector<double> default_theta_grid(const std::vector<double>& maxima);

/// Nazarov: C_Z(eps) <= (eps / sigma_min)(sqrt(2 log d) + 2), capped at 1.
double nazarov_bound(double sigma_min, Eigen::Index d, double epsilon);

/// Factor structure: C_F(eps) <= eps / (sqrt(2 pi) a_min), capped at 1.
double factor_bound(double a_min, double epsilon);

}  // namespace hdclt
