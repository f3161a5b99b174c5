#include "hdclt/bounds.hpp"

#include <cmath>
#include <functional>

#include "hdclt/errors.hpp"

namespace hdclt {

RateTerms rate_terms(double B_n, double D_n, double q, double n, double d) {
  if (!(B_n >= 1.0)) throw parameter_error("rate_terms: B_n >= 1");
  if (!(D_n >= 1.0)) throw parameter_error("rate_terms: D_n >= 1");
  if (!(q > 2.0)) throw parameter_error("rate_terms: q > 2");
  if (!(n >= 3.0)) throw parameter_error("rate_terms: n >= 3");
  if (!(d >= 3.0)) throw parameter_error("rate_terms: d >= 3");
  const double ld = std::log(d), ln = std::log(n);
  RateTerms r;
  r.delta_n1 = B_n * B_n * ld * ld * ld / n;
  r.delta_n2 = B_n * B_n * ld * ld * ln * ln / n;
  r.delta_n2_q = D_n * D_n * std::pow(ld, 2.0 - 2.0 / q) / std::pow(n, 1.0 - 2.0 / q);
  return r;
}

double empirical_Bn(const SampleMatrix& X) {
  const double m4 =
      X.values.array().pow(4).colwise().sum().maxCoeff() / static_cast<double>(X.n());
  return std::max(1.0, std::sqrt(m4));
}

CouplingFunctionals coupling_functionals(const SampleMatrix& X,
                                         const CovarianceModel& C, double epsilon) {
  if (!(epsilon > 0.0)) throw parameter_error("coupling_functionals: epsilon > 0");
  if (C.d() != X.d()) throw parameter_error("coupling_functionals: dimension mismatch");
  const double n = static_cast<double>(X.n());
  const double ld = std::log(static_cast<double>(X.d()));
  CouplingFunctionals f;
  Eigen::MatrixXd gram = X.values.transpose() * X.values / n;
  f.Delta_n0 = (gram - C.matrix).cwiseAbs().maxCoeff();
  f.Delta_n1 = std::sqrt(X.values.array().pow(4).colwise().sum().maxCoeff() / n);
  const double threshold = std::sqrt(n) * epsilon / (3.0 * ld);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < X.n(); ++i) {
    const double rinf = X.values.row(i).cwiseAbs().maxCoeff();
    if (rinf > threshold) acc += rinf * rinf * rinf * rinf;
  }
  f.Delta_n2_eps = acc / n;
  return f;
}

double coupling_rhs(const CouplingFunctionals& f, double n, double d,
                    double epsilon) {
  if (!(epsilon > 0.0)) throw parameter_error("coupling_rhs: epsilon > 0");
  const double ld = std::log(d);
  const double e2 = epsilon * epsilon;
  return (f.Delta_n0 * ld + f.Delta_n1 * std::sqrt(ld * ld * ld / n)) / e2 +
         f.Delta_n2_eps * ld * ld * ld / n / (e2 * e2);
}

double theorem_bound(double theta, double delta_n1, double second_term) {
  if (theta < 0.0 || delta_n1 < 0.0 || second_term < 0.0)
    throw parameter_error("theorem_bound: nonnegative inputs");
  return std::pow(theta, 2.0 / 3.0) *
         (std::pow(delta_n1, 1.0 / 6.0) + std::pow(second_term, 1.0 / 3.0));
}

namespace {

double witness_tail(double A, double B, double x) {
  return std::min(1.0, A * std::exp(-x / B));
}

// Adaptive Simpson on a smooth integrand.
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  if (depth > 60) throw numerical_error("tail_moment_check: integral did not converge");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

TailMomentCheck tail_moment_check(double A, double B, int p, double t) {
  if (!(A > 0.0) || !(B > 0.0)) throw parameter_error("tail_moment_check: A, B > 0");
  if (p < 1) throw parameter_error("tail_moment_check: p >= 1");
  if (!(t >= 0.0)) throw parameter_error("tail_moment_check: t >= 0");

  auto integrand = [&](double x) {
    return p * std::pow(x, p - 1) * witness_tail(A, B, x);
  };
  // P(Y > x) has a kink at x0 = B log A where the exponential tail crosses 1.
  const double x0 = A > 1.0 ? B * std::log(A) : 0.0;
  const double upper = std::max(t, x0) + B * (60.0 + 10.0 * p);
  const double rhs = std::tgamma(p + 1.0) * A * std::exp(-t / B) * std::pow(t + B, p);
  const double tol = 1e-13 * std::max(rhs, 1e-30);
  double tail = 0.0;
  if (x0 > t) {
    tail += integrate(integrand, t, x0, tol);
    tail += integrate(integrand, x0, upper, tol);
  } else {
    tail += integrate(integrand, t, upper, tol);
  }

  TailMomentCheck chk;
  chk.lhs = std::pow(t, p) * witness_tail(A, B, t) + tail;
  chk.rhs = rhs;
  // slack absorbs quadrature error in the p = 1 equality cases
  chk.ok = chk.lhs <= chk.rhs * (1.0 + 1e-8);
  return chk;
}

double truncation_psi1(double B_n, double n) { return 2.0 * B_n * std::log(n); }

double truncation_qmoment(double D_n, double n, double d, double q) {
  if (!(q > 2.0)) throw parameter_error("truncation_qmoment: q > 2");
  return D_n * std::pow(n / std::log(d), 1.0 / q);
}

}  // namespace hdclt
