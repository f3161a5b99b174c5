#include "hdclt/multipliers.hpp"

#include <cmath>

#include "hdclt/errors.hpp"
#include "hdclt/quadrature.hpp"

namespace hdclt {

MultiplierLaw beta_transformed_law() {
  MultiplierLaw law;
  law.name = "beta_transformed";
  law.support_bound = 3.0;
  law.moments = {0.0, 1.0, 1.0, 3.0};
  law.sampler = [](RngStream& rng) { return 4.0 * rng.beta_half_threehalf() - 1.0; };
  law.has_kernel = true;
  law.kernel = [](double x) {
    return (x > -1.0 && x < 3.0) ? 0.5 * (x + 1.0) * (3.0 - x) : 0.0;
  };
  law.kernel_sup = 2.0;  // attained at x = 1
  return law;
}

MultiplierLaw rademacher_law() {
  MultiplierLaw law;
  law.name = "rademacher";
  law.support_bound = 1.0;
  law.moments = {0.0, 1.0, 0.0, 1.0};
  law.sampler = [](RngStream& rng) { return rng.rademacher(); };
  return law;
}

MultiplierLaw two_point_law(double p) {
  if (!(p > 0.0 && p < 1.0)) throw parameter_error("two_point_law: p must be in (0,1)");
  const double lo = -std::sqrt((1.0 - p) / p);
  const double hi = std::sqrt(p / (1.0 - p));
  MultiplierLaw law;
  law.name = "two_point";
  law.support_bound = std::max(-lo, hi);
  const double m3 = p * lo * lo * lo + (1.0 - p) * hi * hi * hi;
  const double m4 = p * lo * lo * lo * lo + (1.0 - p) * hi * hi * hi * hi;
  law.moments = {0.0, 1.0, m3, m4};
  law.sampler = [p, lo, hi](RngStream& rng) { return rng.uniform() < p ? lo : hi; };
  return law;
}

Eigen::VectorXd sample_multipliers(const MultiplierLaw& law, Eigen::Index n,
                                   RngStream& rng) {
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = law.sampler(rng);
  return w;
}

double kernel_eval(const MultiplierLaw& law, double x) {
  if (!law.has_kernel)
    throw parameter_error("kernel_eval: law '" + law.name + "' has no Stein kernel");
  return law.kernel(x);
}

namespace {

struct TestFunction {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
};

std::vector<TestFunction> stein_test_family() {
  std::vector<TestFunction> fam;
  for (int deg = 0; deg <= 8; ++deg) {
    fam.push_back({"x^" + std::to_string(deg),
                   [deg](double x) { return std::pow(x, deg); },
                   [deg](double x) {
                     return deg == 0 ? 0.0 : deg * std::pow(x, deg - 1);
                   }});
  }
  fam.push_back({"cos", [](double x) { return std::cos(x); },
                 [](double x) { return -std::sin(x); }});
  fam.push_back({"exp(x/4)", [](double x) { return std::exp(0.25 * x); },
                 [](double x) { return 0.25 * std::exp(0.25 * x); }});
  return fam;
}

}  // namespace

std::vector<SteinResidual> verify_stein_identity(const MultiplierLaw& law, int nodes) {
  if (!law.has_kernel)
    throw parameter_error("verify_stein_identity: law has no Stein kernel");
  if (law.name != "beta_transformed")
    throw parameter_error(
        "verify_stein_identity: closed-form density known only for beta_transformed");

  // eta ~ Beta(1/2,3/2) density ~ (1-eta)^{1/2} eta^{-1/2}; with t on (-1,1)
  // and eta = (t+1)/2 this is the Jacobi weight alpha=1/2, beta=-1/2, and
  // xi = 4 eta - 1 = 2t + 1.
  QuadratureRule rule = gauss_jacobi(nodes, 0.5, -0.5);
  double mass = 0.0;
  for (double w : rule.weights) mass += w;

  std::vector<SteinResidual> out;
  for (const auto& tf : stein_test_family()) {
    double lhs = 0.0, rhs = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double xi = 2.0 * rule.nodes[k] + 1.0;
      const double w = rule.weights[k] / mass;
      lhs += w * tf.dphi(xi) * law.kernel(xi);
      rhs += w * tf.phi(xi) * xi;
    }
    out.push_back({tf.name, lhs, rhs, std::fabs(lhs - rhs)});
  }
  return out;
}

double linear_form_kernel_deviation(const Eigen::MatrixXd& A,
                                    const MultiplierLaw& law, RngStream& rng,
                                    long reps) {
  if (!law.has_kernel)
    throw parameter_error("linear_form_kernel_deviation: law has no Stein kernel");
  const Eigen::Index n = A.rows();
  double acc = 0.0;
  Eigen::VectorXd tdev(n);
  for (long r = 0; r < reps; ++r) {
    for (Eigen::Index i = 0; i < n; ++i) tdev(i) = law.kernel(law.sampler(rng)) - 1.0;
    Eigen::MatrixXd M = A.transpose() * tdev.asDiagonal() * A;
    acc += M.cwiseAbs().maxCoeff();
  }
  return acc / static_cast<double>(reps);
}

double hoeffding_bound(const Eigen::MatrixXd& A, const MultiplierLaw& law) {
  if (!law.has_kernel)
    throw parameter_error("hoeffding_bound: law has no Stein kernel");
  const double d = static_cast<double>(A.cols());
  const double colmax = A.array().pow(4).colwise().sum().sqrt().maxCoeff();
  return std::sqrt(2.0 * std::log(2.0 * d * d)) * (law.kernel_sup + 1.0) * colmax;
}

}  // namespace hdclt
