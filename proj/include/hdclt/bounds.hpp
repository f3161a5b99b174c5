#pragma once

#include <Eigen/Core>

#include "hdclt/core_data.hpp"
#include "hdclt/reports.hpp"

namespace hdclt {

struct RateTerms {
  double delta_n1 = 0.0;    // B_n^2 (log d)^3 / n
  double delta_n2 = 0.0;    // B_n^2 (log d)^2 (log n)^2 / n
  double delta_n2_q = 0.0;  // D_n^2 (log d)^{2-2/q} / n^{1-2/q}
};

RateTerms rate_terms(double B_n, double D_n, double q, double n, double d);

/// Plug-in sqrt(max_j n^{-1} sum_i X_ij^4), floored at 1.
double empirical_Bn(const SampleMatrix& X);

struct CouplingFunctionals {
  double Delta_n0 = 0.0;      // max_{j,k} |n^{-1} (X^T X)_{jk} - C_{jk}|
  double Delta_n1 = 0.0;      // sqrt(n^{-1} max_j sum_i X_ij^4)
  double Delta_n2_eps = 0.0;  // truncated fourth-moment tail functional
};

CouplingFunctionals coupling_functionals(const SampleMatrix& X,
                                         const CovarianceModel& C, double epsilon);

/// eps^{-2}(D0 log d + D1 sqrt((log d)^3 / n)) + eps^{-4} D2 (log d)^3 / n.
double coupling_rhs(const CouplingFunctionals& f, double n, double d,
                    double epsilon);

/// theta^{2/3} (delta1^{1/6} + delta2^{1/3}). For the bootstrap variant pass
/// b^2-premultiplied deltas.
double theorem_bound(double theta, double delta_n1, double second_term);

struct TailMomentCheck {
  double lhs = 0.0;  // E[Y^p; Y > t] for the canonical witness tail
  double rhs = 0.0;  // p! A e^{-t/B} (t + B)^p
  bool ok = false;
};

/// Canonical witness: P(Y > x) = min(1, A e^{-x/B}). lhs by adaptive
/// integration of p x^{p-1} P(Y > max(x, t)).
TailMomentCheck tail_moment_check(double A, double B, int p, double t);

/// Truncation thresholds from the proofs.
double truncation_psi1(double B_n, double n);                    // 2 B_n log n
double truncation_qmoment(double D_n, double n, double d, double q);

}  // namespace hdclt
