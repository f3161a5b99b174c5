#pragma once

#include <Eigen/Core>
#include <functional>
#include <utility>
#include <vector>

#include "hdclt/reports.hpp"

namespace hdclt {

struct SmoothMaxParams {
  double beta = 1.0;
};

/// Log-sum-exp smooth maximum, computed in shifted form. Satisfies
/// 0 <= smooth_max(x) - max_j x_j <= log(d) / beta.
double smooth_max(const Eigen::VectorXd& x, const SmoothMaxParams& params);

/// Gradient of the smooth max: the softmax weight vector (sums to 1).
Eigen::VectorXd smooth_max_gradient(const Eigen::VectorXd& x,
                                    const SmoothMaxParams& params);

/// Finite union of closed intervals; +-infinity endpoints allowed.
struct IntervalSet {
  std::vector<std::pair<double, double>> components;  // sorted, disjoint

  static IntervalSet half_line_leq(double a);     // (-inf, a]
  static IntervalSet interval(double lo, double hi);

  bool contains(double x) const;
  bool contains_inflated(double x, double margin) const;  // membership in A^margin
};

/// C-infinity sandwich function h with 1_A <= h <= 1_{A^{3eps}} and
/// ||h^{(r)}|| <= C_r eps^{-r}. Built from the classical exp(-1/t) transition;
/// the C_r are certified once from a dense scan of the unit-width profile and
/// inflated 5%.
class SmoothIndicator {
 public:
  static SmoothIndicator build(IntervalSet set, double epsilon);

  double operator()(double x) const;
  double epsilon() const { return epsilon_; }
  const IntervalSet& set() const { return set_; }

  /// Certified bound on ||h^{(r)}||_inf, r in 1..4.
  double derivative_bound(int r) const;

  /// Certified profile constants C_r (unit epsilon), r in 1..4.
  static double certified_constant(int r);

 private:
  SmoothIndicator(IntervalSet set, double epsilon)
      : set_(std::move(set)), epsilon_(epsilon) {}
  IntervalSet set_;
  double epsilon_;
};

using VectorSampler = std::function<Eigen::VectorXd()>;

/// Grid-restricted estimate of
///   sup_y | E h(Phi_beta(F - y)) - E h(Phi_beta(G - y)) |
/// using paired draws from the two samplers (common replication index), which
/// makes identical samplers give exactly zero. Lower estimate of the true sup.
DistanceReport rho_h_beta_estimate(const VectorSampler& sampler_f,
                                   const VectorSampler& sampler_g,
                                   const SmoothIndicator& h, double beta,
                                   const std::vector<Eigen::VectorXd>& y_grid,
                                   long reps);

}  // namespace hdclt
