#include "hdclt/anticoncentration.hpp"

#include <algorithm>
#include <cmath>

#include "hdclt/errors.hpp"

namespace hdclt {

ConcentrationEstimate levy_concentration_from_maxima(std::vector<double> maxima,
                                                     double epsilon) {
  if (!(epsilon > 0.0))
    throw parameter_error("levy_concentration: epsilon must be positive");
  const std::size_t m = maxima.size();
  if (m < 100) throw parameter_error("levy_concentration: need >= 100 samples");
  std::sort(maxima.begin(), maxima.end());

  // Sliding window: count of maxima in [M_i, M_i + eps] for each left edge;
  // the sup over t is attained (up to discreteness) at a sample point.
  std::size_t best = 0, hi = 0;
  for (std::size_t lo = 0; lo < m; ++lo) {
    if (hi < lo) hi = lo;
    while (hi < m && maxima[hi] <= maxima[lo] + epsilon) ++hi;
    best = std::max(best, hi - lo);
  }
  ConcentrationEstimate est;
  est.epsilon = epsilon;
  est.value = static_cast<double>(best) / static_cast<double>(m);
  est.se = std::sqrt(std::max(0.0, est.value * (1.0 - est.value)) /
                     static_cast<double>(m));
  return est;
}

ConcentrationEstimate levy_concentration_scalar_max(const Eigen::MatrixXd& samples,
                                                    double epsilon) {
  std::vector<double> maxima(static_cast<std::size_t>(samples.rows()));
  for (Eigen::Index r = 0; r < samples.rows(); ++r)
    maxima[static_cast<std::size_t>(r)] = samples.row(r).maxCoeff();
  return levy_concentration_from_maxima(std::move(maxima), epsilon);
}

ThetaEstimate theta_estimate_from_maxima(const std::vector<double>& maxima,
                                         const std::vector<double>& eps_grid) {
  if (eps_grid.empty()) throw parameter_error("theta_estimate: empty grid");
  ThetaEstimate est;
  est.grid = eps_grid;
  std::vector<double> ratios(eps_grid.size());
  for (std::size_t k = 0; k < eps_grid.size(); ++k) {
    const auto c = levy_concentration_from_maxima(maxima, eps_grid[k]);
    ratios[k] = c.value / eps_grid[k];
    if (ratios[k] > est.value) {
      est.value = ratios[k];
      est.argmax_epsilon = eps_grid[k];
    }
  }
  // If the smallest epsilon wins by a wide margin the ratio has not leveled
  // off and the estimate is still resolution-limited.
  est.unstable = eps_grid.size() > 1 && est.argmax_epsilon == eps_grid.front() &&
                 ratios[0] > 2.0 * ratios[1];
  return est;
}

ThetaEstimate theta_estimate(const Eigen::MatrixXd& samples,
                             const std::vector<double>& eps_grid) {
  std::vector<double> maxima(static_cast<std::size_t>(samples.rows()));
  for (Eigen::Index r = 0; r < samples.rows(); ++r)
    maxima[static_cast<std::size_t>(r)] = samples.row(r).maxCoeff();
  return theta_estimate_from_maxima(maxima, eps_grid);
}

std::vector<double> default_theta_grid(const std::vector<double>& maxima) {
  if (maxima.size() < 100) throw parameter_error("default_theta_grid: need >= 100");
  std::vector<double> sorted = maxima;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double iqr = sorted[(3 * m) / 4] - sorted[m / 4];
  if (!(iqr > 0.0)) throw numerical_error("default_theta_grid: degenerate maxima");
  std::vector<double> grid(20);
  // geometric on [0.01, 1] * iqr
  for (int k = 0; k < 20; ++k)
    grid[static_cast<std::size_t>(k)] = iqr * std::pow(100.0, k / 19.0) / 100.0;
  return grid;
}

double nazarov_bound(double sigma_min, Eigen::Index d, double epsilon) {
  if (!(sigma_min > 0.0))
    throw parameter_error("nazarov_bound: sigma_min must be positive");
  if (d < 1) throw parameter_error("nazarov_bound: d must be >= 1");
  if (!(epsilon >= 0.0)) throw parameter_error("nazarov_bound: epsilon >= 0");
  const double raw =
      epsilon / sigma_min * (std::sqrt(2.0 * std::log(static_cast<double>(d))) + 2.0);
  return std::min(1.0, raw);
}

double factor_bound(double a_min, double epsilon) {
  if (!(a_min > 0.0)) throw parameter_error("factor_bound: a_min must be positive");
  if (!(epsilon >= 0.0)) throw parameter_error("factor_bound: epsilon >= 0");
  return std::min(1.0, epsilon / (std::sqrt(2.0 * M_PI) * a_min));
}

}  // namespace hdclt
