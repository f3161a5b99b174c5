#include "hdclt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hdclt/errors.hpp"
#include "hdclt/normal.hpp"

namespace hdclt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> row_maxima(const Eigen::MatrixXd& samples) {
  std::vector<double> m(static_cast<std::size_t>(samples.rows()));
  for (Eigen::Index r = 0; r < samples.rows(); ++r)
    m[static_cast<std::size_t>(r)] = samples.row(r).maxCoeff();
  return m;
}

}  // namespace

DistanceReport ks_scalar_distance(std::vector<double> f, std::vector<double> g) {
  if (f.size() < 2 || g.size() < 2)
    throw parameter_error("ks_scalar_distance: need >= 2 samples each");
  std::sort(f.begin(), f.end());
  std::sort(g.begin(), g.end());
  const double mf = static_cast<double>(f.size());
  const double mg = static_cast<double>(g.size());
  std::size_t i = 0, j = 0;
  double best = 0.0, pf_at = 0.0, pg_at = 0.0;
  while (i < f.size() && j < g.size()) {
    const double x = std::min(f[i], g[j]);
    while (i < f.size() && f[i] <= x) ++i;
    while (j < g.size() && g[j] <= x) ++j;
    const double pf = i / mf, pg = j / mg;
    if (std::fabs(pf - pg) > best) {
      best = std::fabs(pf - pg);
      pf_at = pf;
      pg_at = pg;
    }
  }
  DistanceReport rep;
  rep.value = best;
  rep.se = std::sqrt(pf_at * (1.0 - pf_at) / mf + pg_at * (1.0 - pg_at) / mg);
  rep.mode = "max_class";
  return rep;
}

DistanceReport ks_scalar_distance(std::vector<double> f, const ScalarCdf& cdf) {
  if (f.size() < 2) throw parameter_error("ks_scalar_distance: need >= 2 samples");
  std::sort(f.begin(), f.end());
  const double m = static_cast<double>(f.size());
  double best = 0.0, p_at = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double p = cdf(f[i]);
    const double hi = std::fabs((i + 1) / m - p);
    const double lo = std::fabs(i / m - p);
    if (hi > best) { best = hi; p_at = p; }
    if (lo > best) { best = lo; p_at = p; }
  }
  DistanceReport rep;
  rep.value = best;
  rep.se = std::sqrt(p_at * (1.0 - p_at) / m);
  rep.mode = "max_class";
  return rep;
}

DistanceReport ks_max_distance(const Eigen::MatrixXd& samples_f,
                               const Eigen::MatrixXd& samples_g) {
  return ks_scalar_distance(row_maxima(samples_f), row_maxima(samples_g));
}

DistanceReport ks_max_distance(const Eigen::MatrixXd& samples_f,
                               const ScalarCdf& reference_cdf) {
  return ks_scalar_distance(row_maxima(samples_f), reference_cdf);
}

namespace {

// Empirical probability of {lo_j <= x_j <= hi_j for all j}, vectorized per
// finite face. `work` is a reusable rows-sized byte mask.
double rectangle_probability(const Eigen::MatrixXd& M, const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi,
                             Eigen::Array<bool, Eigen::Dynamic, 1>& work) {
  work.setConstant(M.rows(), true);
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    if (lo(j) > -kInf) work = work && (M.col(j).array() >= lo(j));
    if (hi(j) < kInf) work = work && (M.col(j).array() <= hi(j));
  }
  return static_cast<double>(work.count()) / static_cast<double>(M.rows());
}

}  // namespace

DistanceReport rectangle_family_distance(const Eigen::MatrixXd& samples_f,
                                         const Eigen::MatrixXd& samples_g,
                                         long K, RngStream& rng,
                                         int quantile_cuts) {
  if (K < 1) throw parameter_error("rectangle_family_distance: K >= 1");
  if (samples_f.cols() != samples_g.cols())
    throw parameter_error("rectangle_family_distance: dimension mismatch");
  const Eigen::Index d = samples_f.cols();
  const double mf = static_cast<double>(samples_f.rows());
  const double mg = static_cast<double>(samples_g.rows());

  DistanceReport rep;
  rep.mode = "rectangle_family";
  rep.family_size = K + quantile_cuts;

  // Exact max-class KS first: the one-sided rectangles {max <= t} over every
  // jump point are part of the family, so the result dominates the KS value.
  std::vector<double> max_f = row_maxima(samples_f);
  std::vector<double> max_g = row_maxima(samples_g);
  {
    DistanceReport ks = ks_scalar_distance(max_f, max_g);
    rep.value = ks.value;
    rep.se = ks.se;
  }

  auto note = [&](double pf, double pg) {
    const double gap = std::fabs(pf - pg);
    if (gap > rep.value) {
      rep.value = gap;
      rep.se = std::sqrt(pf * (1.0 - pf) / mf + pg * (1.0 - pg) / mg);
    }
  };

  // One-sided max rectangles at pooled max-statistic quantiles (redundant
  // given the exact KS above; kept so family_size reflects the construction).
  std::vector<double> pooled_max = max_f;
  pooled_max.insert(pooled_max.end(), max_g.begin(), max_g.end());
  std::sort(pooled_max.begin(), pooled_max.end());
  std::sort(max_f.begin(), max_f.end());
  std::sort(max_g.begin(), max_g.end());
  auto ecdf = [](const std::vector<double>& sorted, double t) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), t) -
                               sorted.begin()) /
           static_cast<double>(sorted.size());
  };
  for (int c = 1; c <= quantile_cuts; ++c) {
    const std::size_t idx = static_cast<std::size_t>(
        (static_cast<double>(c) / (quantile_cuts + 1)) * pooled_max.size());
    const double t = pooled_max[std::min(idx, pooled_max.size() - 1)];
    note(ecdf(max_f, t), ecdf(max_g, t));
  }

  // Pooled per-column sorted values for quantile corners.
  const Eigen::Index mp = samples_f.rows() + samples_g.rows();
  Eigen::MatrixXd pooled(mp, d);
  pooled.topRows(samples_f.rows()) = samples_f;
  pooled.bottomRows(samples_g.rows()) = samples_g;
  for (Eigen::Index j = 0; j < d; ++j)
    std::sort(pooled.col(j).data(), pooled.col(j).data() + mp);

  Eigen::VectorXd lo(d), hi(d);
  Eigen::Array<bool, Eigen::Dynamic, 1> work;
  for (long k = 0; k < K; ++k) {
    for (Eigen::Index j = 0; j < d; ++j) {
      double a = rng.uniform() < 0.25
                     ? -kInf
                     : pooled(static_cast<Eigen::Index>(rng.uniform() * mp), j);
      double b = rng.uniform() < 0.25
                     ? kInf
                     : pooled(static_cast<Eigen::Index>(rng.uniform() * mp), j);
      if (a > b) std::swap(a, b);
      lo(j) = a;
      hi(j) = b;
    }
    note(rectangle_probability(samples_f, lo, hi, work),
         rectangle_probability(samples_g, lo, hi, work));
  }
  return rep;
}

double iid_gauss_max_cdf(double x, double d) {
  if (d < 1.0) throw parameter_error("iid_gauss_max_cdf: d >= 1");
  return std::exp(d * norm_logcdf(x));
}

double gumbel_xn(double d) {
  if (d < 2.0) throw parameter_error("gumbel_xn: d >= 2");
  // Phi(x) = e^{-1/d}; work with the complementary probability 1 - e^{-1/d}
  // so the tail inversion stays accurate for huge d.
  return norm_isf(-std::expm1(-1.0 / d));
}

double gumbel_bn(double d) {
  if (d < 3.0) throw parameter_error("gumbel_bn: d >= 3");
  const double r = std::sqrt(2.0 * std::log(d));
  return r - (std::log(std::log(d)) + std::log(4.0 * M_PI)) / (2.0 * r);
}

double cramer_ratio(double n, double x, double gamma) {
  if (n < 1.0) throw parameter_error("cramer_ratio: n >= 1");
  return std::exp(gamma * x * x * x / (6.0 * std::sqrt(n)));
}

}  // namespace hdclt
