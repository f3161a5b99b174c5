#pragma once

#include <string>

namespace hdclt {

/// An estimated distributional distance with its Monte Carlo standard error.
/// Values over rectangle/max classes are grid- or family-restricted lower
/// estimates of the true sup; `mode` records the restriction.
struct DistanceReport {
  double value = 0.0;
  double se = 0.0;
  std::string mode;       // e.g. "max_class", "abs_max_class", "rectangle_family", "y_grid"
  long family_size = 0;   // rectangles sampled, when applicable
};

/// Evaluated theoretical quantities for one (data, config) pair. All bounds
/// use the constant-1 convention; universal constants are unknown.
struct BoundReport {
  double B_n = 0.0;
  double D_n = 0.0;
  double q = 0.0;
  double delta_n1 = 0.0;
  double delta_n2 = 0.0;
  double delta_n2_q = 0.0;
  double Delta_n0 = 0.0;
  double Delta_n1 = 0.0;
  double Delta_n2_eps = 0.0;
  double epsilon = 0.0;
  double theta_bound = 0.0;      // anti-concentration route actually used
  double theta_bound_nazarov = 0.0;
  double theta_bound_factor = 0.0;  // 0 when no factor structure
  double coupling_rhs = 0.0;
  double total = 0.0;            // theta^{2/3} (delta1^{1/6} + delta2^{1/3})
};

}  // namespace hdclt
