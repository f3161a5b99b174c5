#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hdclt/rng.hpp"

namespace hdclt {

/// Bounded multiplier distribution with mean 0, variance 1, |w| <= b a.s.,
/// and (for the beta-transformed law) a scalar Stein kernel tau with
/// E[phi'(w) tau(w)] = E[phi(w) w].
struct MultiplierLaw {
  std::string name;
  double support_bound = 1.0;            // b
  std::array<double, 4> moments{};       // m1..m4
  std::function<double(RngStream&)> sampler;
  bool has_kernel = false;
  std::function<double(double)> kernel;  // tau, zero outside support
  double kernel_sup = 0.0;               // ||tau||_inf
};

/// xi = 4 eta - 1 with eta ~ Beta(1/2, 3/2): b = 3, moments (0, 1, 1, 3),
/// Stein kernel tau(x) = (x+1)(3-x)/2 on (-1, 3).
MultiplierLaw beta_transformed_law();

/// +-1 with probability 1/2 each; no classical kernel (discrete law).
MultiplierLaw rademacher_law();

/// Mean-0 variance-1 two-point law with atoms -sqrt((1-p)/p), sqrt(p/(1-p)).
MultiplierLaw two_point_law(double p);

Eigen::VectorXd sample_multipliers(const MultiplierLaw& law, Eigen::Index n,
                                   RngStream& rng);

/// tau at x; throws if the law has no kernel.
double kernel_eval(const MultiplierLaw& law, double x);

struct SteinResidual {
  std::string test_function;
  double lhs = 0.0;  // E[phi'(xi) tau(xi)]
  double rhs = 0.0;  // E[phi(xi) xi]
  double residual = 0.0;
};

/// Checks the kernel identity by Gauss-Jacobi quadrature against the exact
/// Beta(1/2,3/2) weight, for monomials of degree 0..8, cos, and exp(x/4).
std::vector<SteinResidual> verify_stein_identity(const MultiplierLaw& law,
                                                 int nodes = 64);

/// MC estimate of E[ max_{j,k} | sum_i a_ij a_ik (tau(xi_i) - 1) | ].
double linear_form_kernel_deviation(const Eigen::MatrixXd& A,
                                    const MultiplierLaw& law, RngStream& rng,
                                    long reps);

/// sqrt(2 log(2 d^2)) max_j sqrt( sum_i a_ij^4 (||tau||_inf + 1)^2 ).
double hoeffding_bound(const Eigen::MatrixXd& A, const MultiplierLaw& law);

}  // namespace hdclt
