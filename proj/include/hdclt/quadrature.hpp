#pragma once

#include <vector>

namespace hdclt {

struct QuadratureRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to the weight-function mass
};

/// Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta on (-1, 1),
/// computed by the Golub-Welsch eigenvalue method. Exact for polynomials of
/// degree <= 2n - 1 against the weight.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

}  // namespace hdclt
