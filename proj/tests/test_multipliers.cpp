#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hdclt/errors.hpp"
#include "hdclt/multipliers.hpp"

using namespace hdclt;

TEST_CASE("beta-transformed sample moments match the declared ones") {
  MultiplierLaw law = beta_transformed_law();
  CHECK(law.support_bound == 3.0);
  CHECK(law.moments[0] == 0.0);
  CHECK(law.moments[1] == 1.0);
  CHECK(law.moments[2] == 1.0);
  CHECK(law.moments[3] == 3.0);

  RngStream rng(1, 0);
  const long n = 1000000;
  double s1 = 0, s2 = 0, s3 = 0;
  for (long i = 0; i < n; ++i) {
    const double xi = law.sampler(rng);
    REQUIRE(std::fabs(xi) <= 3.0);
    s1 += xi;
    s2 += xi * xi;
    s3 += xi * xi * xi;
  }
  CHECK(std::fabs(s1 / n) < 3.0 / std::sqrt(double(n)));
  CHECK(std::fabs(s2 / n - 1.0) < 3.0 * std::sqrt(2.0 / n));
  CHECK(std::fabs(s3 / n - 1.0) < 3.0 * std::sqrt(18.0 / n));
}

TEST_CASE("rademacher and two-point laws") {
  MultiplierLaw rad = rademacher_law();
  RngStream rng(2, 0);
  for (int i = 0; i < 1000; ++i) {
    const double w = rad.sampler(rng);
    REQUIRE((w == 1.0 || w == -1.0));
  }
  CHECK_FALSE(rad.has_kernel);
  CHECK_THROWS_AS(kernel_eval(rad, 0.0), parameter_error);

  MultiplierLaw tp = two_point_law(0.2);
  const double lo = -std::sqrt(0.8 / 0.2), hi = std::sqrt(0.2 / 0.8);
  double s1 = 0, s2 = 0;
  const long n = 200000;
  for (long i = 0; i < n; ++i) {
    const double w = tp.sampler(rng);
    REQUIRE((std::fabs(w - lo) < 1e-14 || std::fabs(w - hi) < 1e-14));
    s1 += w;
    s2 += w * w;
  }
  CHECK(std::fabs(s1 / n) < 4.0 * tp.support_bound / std::sqrt(double(n)));
  CHECK(std::fabs(s2 / n - 1.0) < 4.0 * 4.0 / std::sqrt(double(n)));
  CHECK_THROWS_AS(two_point_law(0.0), parameter_error);
  CHECK_THROWS_AS(two_point_law(1.0), parameter_error);
}

TEST_CASE("kernel values of the beta-transformed law") {
  MultiplierLaw law = beta_transformed_law();
  CHECK(kernel_eval(law, 1.0) == doctest::Approx(2.0));
  CHECK(kernel_eval(law, 0.0) == doctest::Approx(1.5));
  CHECK(kernel_eval(law, -1.0) == 0.0);
  CHECK(kernel_eval(law, 3.0) == 0.0);
  CHECK(kernel_eval(law, -2.0) == 0.0);
  CHECK(kernel_eval(law, 4.0) == 0.0);
  for (double x = -0.999; x < 3.0; x += 0.01) {
    CHECK(kernel_eval(law, x) >= 0.0);
    CHECK(kernel_eval(law, x) <= law.kernel_sup + 1e-14);
  }
}

TEST_CASE("stein identity residuals at 64 nodes") {
  auto results = verify_stein_identity(beta_transformed_law(), 64);
  REQUIRE(results.size() == 11);
  for (const auto& r : results) {
    const bool poly = r.test_function.rfind("x^", 0) == 0;
    CHECK(r.residual < (poly ? 1e-8 : 1e-6));
  }
  // phi(x) = x: both sides are Var(xi) = 1
  CHECK(results[1].lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(results[1].rhs == doctest::Approx(1.0).epsilon(1e-10));
  // phi constant: RHS = E[xi] = 0
  CHECK(std::fabs(results[0].rhs) < 1e-12);
  CHECK(results[0].lhs == 0.0);

  CHECK_THROWS_AS(verify_stein_identity(rademacher_law(), 64), parameter_error);
}

TEST_CASE("linear-form kernel deviation: zero matrix, scaling, hoeffding") {
  MultiplierLaw law = beta_transformed_law();
  RngStream rng(3, 0);

  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(10, 4);
  CHECK(linear_form_kernel_deviation(zero, law, rng, 200) == 0.0);
  CHECK(hoeffding_bound(zero, law) == 0.0);

  // d = 1-ish (use 1 column of interest): O(n^{-1/2}) scaling
  auto scalar_dev = [&](int n) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Constant(n, 1, 1.0 / std::sqrt(double(n)));
    return linear_form_kernel_deviation(A, law, rng, 4000);
  };
  const double d64 = scalar_dev(64), d256 = scalar_dev(256);
  CHECK(d256 / d64 > 0.5 * 0.7);  // halving within +-30%
  CHECK(d256 / d64 < 0.5 * 1.3);

  for (int t = 0; t < 5; ++t) {
    const int n = 20 + 40 * t, d = 3 + 2 * t;
    Eigen::MatrixXd A(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) A(i, j) = rng.normal() / std::sqrt(double(n));
    const double dev = linear_form_kernel_deviation(A, law, rng, 500);
    CHECK(dev <= hoeffding_bound(A, law));
  }
}

TEST_CASE("hoeffding bound arithmetic and homogeneity") {
  MultiplierLaw law = beta_transformed_law();
  Eigen::MatrixXd A = Eigen::MatrixXd::Constant(4, 3, 0.5);
  // sqrt(2 log 18) * sqrt(4 * (1/16) * 9) = sqrt(2 log 18) * 1.5
  CHECK(hoeffding_bound(A, law) ==
        doctest::Approx(3.606476522942128).epsilon(1e-12));
  CHECK(hoeffding_bound(2.0 * A, law) ==
        doctest::Approx(4.0 * hoeffding_bound(A, law)).epsilon(1e-12));
}
