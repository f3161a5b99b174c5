#pragma once

#include <Eigen/Core>
#include <functional>

#include "hdclt/reports.hpp"
#include "hdclt/rng.hpp"

namespace hdclt {

using ScalarCdf = std::function<double(double)>;

/// Two-sample Kolmogorov statistic of the row-max statistics of F and G.
DistanceReport ks_max_distance(const Eigen::MatrixXd& samples_f,
                               const Eigen::MatrixXd& samples_g);

/// One-sample mode: row maxima of F against an exact scalar CDF, evaluated
/// pointwise at the sorted sample values (no binning).
DistanceReport ks_max_distance(const Eigen::MatrixXd& samples_f,
                               const ScalarCdf& reference_cdf);

/// KS on precomputed scalar statistics.
DistanceReport ks_scalar_distance(std::vector<double> stats_f,
                                  std::vector<double> stats_g);
DistanceReport ks_scalar_distance(std::vector<double> stats_f,
                                  const ScalarCdf& reference_cdf);

/// Max over a sampled rectangle family of the empirical probability gap;
/// a lower estimate of rho_n(A^re). The family always contains the one-sided
/// max rectangles {max <= t} at `quantile_cuts` pooled t-quantiles (so the
/// result dominates the max-class KS statistic by construction) plus K random
/// rectangles with corners at pooled marginal quantiles; each face is +-inf
/// with probability 1/4.
DistanceReport rectangle_family_distance(const Eigen::MatrixXd& samples_f,
                                         const Eigen::MatrixXd& samples_g,
                                         long K, RngStream& rng,
                                         int quantile_cuts = 100);

/// P(max_{j<=d} Z_j <= x) = Phi(x)^d for iid standard normals, in log space.
double iid_gauss_max_cdf(double x, double d);

/// x_n = Phi^{-1}(e^{-1/d}): the unique solution of Phi(x)^d = 1/e.
double gumbel_xn(double d);

/// b_n = sqrt(2 log d) - (log log d + log 4 pi) / (2 sqrt(2 log d)).
double gumbel_bn(double d);

/// exp(gamma x^3 / (6 sqrt(n))): leading Cramer-series tail correction.
double cramer_ratio(double n, double x, double gamma);

}  // namespace hdclt
