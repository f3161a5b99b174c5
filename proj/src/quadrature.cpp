#include "hdclt/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hdclt/errors.hpp"

namespace hdclt {

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw parameter_error("gauss_jacobi: need n >= 1");
  if (alpha <= -1.0 || beta <= -1.0)
    throw parameter_error("gauss_jacobi: need alpha, beta > -1");

  const double ab = alpha + beta;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    // diagonal (recurrence a_k)
    double denom = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    double ak;
    if (k == 0) {
      ak = (beta - alpha) / (ab + 2.0);
    } else if (denom == 0.0) {
      ak = 0.0;
    } else {
      ak = (beta * beta - alpha * alpha) / denom;
    }
    J(k, k) = ak;
    if (k + 1 < n) {
      // off-diagonal sqrt(b_{k+1})
      const int m = k + 1;
      double num = 4.0 * m * (m + alpha) * (m + beta) * (m + ab);
      double den = (2.0 * m + ab) * (2.0 * m + ab) * (2.0 * m + ab + 1.0) *
                   (2.0 * m + ab - 1.0);
      const double bk = num / den;
      J(k, k + 1) = J(k + 1, k) = std::sqrt(bk);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw numerical_error("gauss_jacobi: eigen decomposition failed");

  // total mass mu0 = 2^(a+b+1) B(a+1, b+1)
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = es.eigenvalues()(k);
    const double v = es.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v * v;
  }
  return rule;
}

}  // namespace hdclt
