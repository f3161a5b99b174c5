#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hdclt/anticoncentration.hpp"
#include "hdclt/core_data.hpp"
#include "hdclt/errors.hpp"
#include "hdclt/rng.hpp"

using namespace hdclt;

TEST_CASE("window estimates: degenerate and full-window cases") {
  std::vector<double> constant(500, 1.5);
  ConcentrationEstimate point = levy_concentration_from_maxima(constant, 0.01);
  CHECK(point.value == 1.0);

  RngStream rng(1, 0);
  std::vector<double> z(2000);
  rng.fill_normal({z.data(), z.size()});
  ConcentrationEstimate full = levy_concentration_from_maxima(z, 100.0);
  CHECK(full.value == 1.0);

  CHECK_THROWS_AS(levy_concentration_from_maxima({1.0, 2.0}, 0.1), parameter_error);
  CHECK_THROWS_AS(levy_concentration_from_maxima(constant, 0.0), parameter_error);
}

TEST_CASE("standard normal window probability at the mode") {
  RngStream rng(2, 0);
  std::vector<double> z(1000000);
  rng.fill_normal({z.data(), z.size()});
  ConcentrationEstimate est = levy_concentration_from_maxima(z, 0.1);
  // sup_t P(t <= Z <= t + 0.1) = 2 Phi(0.05) - 1
  const double truth = 0.03987761167674497;
  // the scan maximizes over ~reps windows, adding a sup-bias of order
  // sqrt(2 log reps) * se on top of the pointwise MC error
  CHECK(std::fabs(est.value - truth) < 3.0 * est.se + 1.5e-3);
  CHECK(est.value > 0.0);
}

TEST_CASE("window counts are monotone in epsilon") {
  RngStream rng(3, 0);
  std::vector<double> z(20000);
  rng.fill_normal({z.data(), z.size()});
  double prev = 0.0;
  for (double eps : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    const double v = levy_concentration_from_maxima(z, eps).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("theta estimate approaches the d=1 density maximum and scales") {
  RngStream rng(4, 0);
  std::vector<double> z(1000000);
  rng.fill_normal({z.data(), z.size()});
  ThetaEstimate t1 = theta_estimate_from_maxima(z, {0.02});
  CHECK(std::fabs(t1.value - 0.3989422804014327) < 0.1 * 0.3989422804014327);

  std::vector<double> z2 = z;
  for (double& v : z2) v *= 2.0;
  ThetaEstimate t2 = theta_estimate_from_maxima(z2, {0.04});
  CHECK(std::fabs(t2.value - 0.5 * t1.value) < 0.1 * t1.value);

  CHECK_THROWS_AS(theta_estimate_from_maxima(z, {}), parameter_error);
}

TEST_CASE("degenerate samples trip the instability flag") {
  RngStream rng(5, 0);
  std::vector<double> tight(5000);
  for (double& v : tight) v = 1e-6 * rng.normal();
  ThetaEstimate t = theta_estimate_from_maxima(tight, {1e-4, 1e-3, 1e-2, 1e-1});
  CHECK(t.unstable);
  CHECK(t.argmax_epsilon == 1e-4);
}

TEST_CASE("default grid spans the interquartile range geometrically") {
  RngStream rng(6, 0);
  std::vector<double> z(5000);
  rng.fill_normal({z.data(), z.size()});
  std::vector<double> grid = default_theta_grid(z);
  REQUIRE(grid.size() == 20);
  for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] > grid[k - 1]);
  CHECK(grid.front() == doctest::Approx(grid.back() / 100.0).epsilon(1e-9));
}

TEST_CASE("nazarov bound formula, cap, and domain errors") {
  CHECK(nazarov_bound(1.0, 3, 0.1) ==
        doctest::Approx(0.34823038073675117).epsilon(1e-12));
  CHECK(nazarov_bound(1.0, 3, 0.0) == 0.0);
  CHECK(nazarov_bound(1.0, 3, 0.2) ==
        doctest::Approx(2.0 * 0.34823038073675117).epsilon(1e-12));
  CHECK(nazarov_bound(0.01, 1000, 1.0) == 1.0);
  CHECK_THROWS_AS(nazarov_bound(0.0, 3, 0.1), parameter_error);
  CHECK_THROWS_AS(nazarov_bound(-1.0, 3, 0.1), parameter_error);
}

TEST_CASE("factor bound formula is dimension-free") {
  CHECK(factor_bound(1.0, 0.1) ==
        doctest::Approx(0.1 / std::sqrt(2.0 * M_PI)).epsilon(1e-14));
  CHECK(factor_bound(1.0, 0.0) == 0.0);
  CHECK(factor_bound(2.0, 0.1) == doctest::Approx(0.5 * factor_bound(1.0, 0.1)));
  CHECK(factor_bound(1e-3, 1.0) == 1.0);
  CHECK_THROWS_AS(factor_bound(0.0, 0.1), parameter_error);
}

TEST_CASE("gaussian maxima respect the nazarov bound (spot check)") {
  RngStream rng(7, 0);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 5 + 5 * trial;
    Eigen::MatrixXd B(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) B(i, j) = rng.normal();
    Eigen::MatrixXd C = B * B.transpose() / d + 0.3 * Eigen::MatrixXd::Identity(d, d);
    CovarianceModel model = CovarianceModel::from_matrix(C);
    const double smin = model.sigma_min();
    Eigen::MatrixXd Z = gaussian_analog_sample(model, 30000, rng);
    for (double escale : {0.05, 0.1, 0.2}) {
      const double eps = escale * smin;
      ConcentrationEstimate est = levy_concentration_scalar_max(Z, eps);
      CHECK(est.value <= nazarov_bound(smin, d, eps) + 3.0 * est.se);
    }
  }
}
