#include "hdclt/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hdclt/errors.hpp"
#include "hdclt/metrics.hpp"

namespace hdclt {

namespace {

// Chunk R so the multiplier block plus the statistic block stay within a few
// tens of MB regardless of (n, d).
long chunk_rows(long R, Eigen::Index n, Eigen::Index d) {
  const double budget = 4.0e6;  // doubles
  long c = static_cast<long>(budget / static_cast<double>(n + d));
  c = std::max<long>(64, std::min<long>(c, R));
  return c;
}

}  // namespace

BootstrapRun wild_bootstrap(const SampleMatrix& data, const MultiplierLaw& law,
                            long R, RngStream& rng, BootstrapMode mode) {
  if (R < 1) throw parameter_error("wild_bootstrap: R >= 1");
  if (!(law.support_bound > 0.0) || !std::isfinite(law.support_bound))
    throw parameter_error("wild_bootstrap: multiplier law must be bounded");
  if (law.moments[0] != 0.0 || law.moments[1] != 1.0)
    throw parameter_error("wild_bootstrap: multiplier law must have mean 0, variance 1");

  const Eigen::Index n = data.n(), d = data.d();
  Eigen::MatrixXd Xc = data.values.rowwise() - data.values.colwise().mean();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  BootstrapRun run;
  run.law_name = law.name;
  run.R = R;
  run.mode = mode;
  if (mode == BootstrapMode::full)
    run.statistics.resize(R, d);
  else
    run.max_stats.resize(R);

  const long chunk = chunk_rows(R, n, d);
  Eigen::MatrixXd W(chunk, n), S(chunk, d);
  for (long r0 = 0; r0 < R; r0 += chunk) {
    const long rows = std::min<long>(chunk, R - r0);
    for (long r = 0; r < rows; ++r)
      for (Eigen::Index i = 0; i < n; ++i) W(r, i) = law.sampler(rng);
    S.topRows(rows).noalias() = W.topRows(rows) * Xc * scale;
    switch (mode) {
      case BootstrapMode::full:
        run.statistics.middleRows(r0, rows) = S.topRows(rows);
        break;
      case BootstrapMode::max_only:
        run.max_stats.segment(r0, rows) = S.topRows(rows).rowwise().maxCoeff();
        break;
      case BootstrapMode::absmax_only:
        run.max_stats.segment(r0, rows) =
            S.topRows(rows).cwiseAbs().rowwise().maxCoeff();
        break;
    }
  }
  return run;
}

DistanceReport rho_wb_estimate(const SampleMatrix& data, const MultiplierLaw& law,
                               const CovarianceModel& C_target, long R,
                               RngStream& rng, long K) {
  BootstrapRun run = wild_bootstrap(data, law, R, rng, BootstrapMode::full);
  Eigen::MatrixXd gauss = gaussian_analog_sample(C_target, R, rng);
  return rectangle_family_distance(run.statistics, gauss, K, rng);
}

double quantile_type7(std::vector<double> values, double p) {
  if (values.empty()) throw parameter_error("quantile_type7: empty");
  if (!(p >= 0.0 && p <= 1.0)) throw parameter_error("quantile_type7: p in [0,1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - std::floor(h)) * (values[lo + 1] - values[lo]);
}

bool SimultaneousBand::covers(const Eigen::VectorXd& mu) const {
  return ((mu - center).cwiseAbs().array() <= half_width.array() + 1e-15).all();
}

SimultaneousBand simultaneous_band(const SampleMatrix& data,
                                   const MultiplierLaw& law, double alpha, long R,
                                   RngStream& rng, bool studentize) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw parameter_error("simultaneous_band: alpha in (0,1]");
  const Eigen::Index n = data.n(), d = data.d();

  Eigen::VectorXd sigma = Eigen::VectorXd::Ones(d);
  if (studentize) {
    Eigen::RowVectorXd mean = data.values.colwise().mean();
    Eigen::VectorXd var =
        ((data.values.rowwise() - mean).array().square().colwise().sum() /
         static_cast<double>(n))
            .transpose();
    std::ostringstream bad;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!(var(j) > 0.0)) bad << (bad.tellp() > 0 ? "," : "") << j;
    }
    if (bad.tellp() > 0)
      throw parameter_error("simultaneous_band: zero variance in columns " +
                            bad.str());
    sigma = var.cwiseSqrt();
  }

  BootstrapRun run = wild_bootstrap(data, law, R, rng, BootstrapMode::full);
  std::vector<double> stat(static_cast<std::size_t>(R));
  for (long r = 0; r < R; ++r)
    stat[static_cast<std::size_t>(r)] =
        (run.statistics.row(r).transpose().cwiseAbs().cwiseQuotient(sigma))
            .maxCoeff();

  SimultaneousBand band;
  band.critical_value = quantile_type7(std::move(stat), 1.0 - alpha);
  band.center = data.values.colwise().mean().transpose();
  band.sigma = sigma;
  band.half_width =
      band.critical_value * sigma / std::sqrt(static_cast<double>(n));
  return band;
}

}  // namespace hdclt
