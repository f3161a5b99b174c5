#include "hdclt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "hdclt/anticoncentration.hpp"
#include "hdclt/bootstrap.hpp"
#include "hdclt/bounds.hpp"
#include "hdclt/errors.hpp"
#include "hdclt/metrics.hpp"
#include "hdclt/multipliers.hpp"
#include "hdclt/normal.hpp"
#include "hdclt/smoothing.hpp"

#include "json.hpp"

namespace hdclt {

namespace {

constexpr const char* kVersion = "0.1.0";

DRule d_rule_from_string(const std::string& s) {
  if (s == "fixed") return DRule::fixed;
  if (s == "cube_root") return DRule::cube_root;
  if (s == "fifth_root") return DRule::fifth_root;
  throw config_error("unknown d_rule: " + s);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from(const Config& cfg) {
  ExperimentConfig e;
  e.experiment = cfg.get_string("experiment.name");
  e.master_seed = static_cast<std::uint64_t>(
      cfg.get_int("experiment.master_seed", static_cast<long>(e.master_seed)));
  e.threads = static_cast<int>(cfg.get_int("experiment.threads", 1));
  if (e.threads < 1) throw config_error("experiment.threads must be >= 1");
  e.out_dir = cfg.get_string("experiment.out_dir", ".");

  e.generator.family = generator_family_from_string(
      cfg.get_string("generator.family", "sub_exponential_iid"));
  e.generator.scale = cfg.get_double("generator.scale", 1.0);
  e.generator.tail_q = cfg.get_double("generator.tail_q", 4.0);
  e.generator.skewness = cfg.get_double("generator.skewness", -2.0);
  e.factor_loading = cfg.get_double("generator.loading", 0.5);

  std::vector<double> n_grid = cfg.get_double_array("grid.n", {100});
  for (double n : n_grid) {
    if (n < 3) throw config_error("grid.n entries must be >= 3");
    e.n_grid.push_back(static_cast<long>(n));
  }
  e.d_rule = d_rule_from_string(cfg.get_string("grid.d_rule", "fixed"));
  e.d_fixed = cfg.get_int("grid.d", 100);
  e.c = cfg.get_double("grid.c", 0.25);

  e.reps = cfg.get_int("mc.reps", e.reps);
  e.R = cfg.get_int("mc.R", e.R);
  e.K = cfg.get_int("mc.K", e.K);
  e.data_draws = cfg.get_int("mc.data_draws", e.data_draws);
  e.epsilon_scale = cfg.get_double("mc.epsilon_scale", e.epsilon_scale);
  e.alpha = cfg.get_double("mc.alpha", e.alpha);
  e.gamma = cfg.get_double("mc.gamma", e.gamma);
  e.x = cfg.get_double("mc.x", e.x);

  e.max_draws = cfg.get_double("budget.max_draws", e.max_draws);
  e.max_doubles = cfg.get_double("budget.max_doubles", e.max_doubles);

  if (e.n_grid.empty()) throw config_error("grid.n must be nonempty");
  if (e.reps < 1 || e.R < 1 || e.K < 1 || e.data_draws < 1)
    throw config_error("mc counts must be positive");
  for (long n : e.n_grid)
    if (e.d_for(n) < 3)
      throw config_error("d_rule yields d < 3 at n = " + std::to_string(n));
  return e;
}

long ExperimentConfig::d_for(long n) const {
  switch (d_rule) {
    case DRule::fixed:
      return d_fixed;
    case DRule::cube_root:
      return static_cast<long>(
          std::ceil(std::exp(std::cbrt(c * static_cast<double>(n)))));
    case DRule::fifth_root:
      return static_cast<long>(
          std::ceil(std::exp(std::pow(c * static_cast<double>(n), 0.2))));
  }
  return d_fixed;
}

void ExperimentConfig::plan_check(double total_draws, double resident_doubles) const {
  if (total_draws > max_draws)
    throw planning_error("plan needs " + fmt17(total_draws) +
                         " variates, budget is " + fmt17(max_draws));
  if (resident_doubles > max_doubles)
    throw planning_error("plan needs " + fmt17(resident_doubles) +
                         " resident doubles, budget is " + fmt17(max_doubles));
}

namespace {

bool has_gaussian_sum(const GeneratorSpec& spec) {
  return spec.family == GeneratorFamily::gaussian ||
         spec.family == GeneratorFamily::factor_model;
}

GeneratorSpec cell_generator(const ExperimentConfig& cfg, long d) {
  GeneratorSpec spec = cfg.generator;
  if (spec.family == GeneratorFamily::factor_model)
    spec.loadings = Eigen::VectorXd::Constant(d, cfg.factor_loading);
  return spec;
}

double population_Bn(const GeneratorSpec& spec, long d) {
  if (spec.family == GeneratorFamily::factor_model) {
    const double v = 1.0 + spec.loadings.cwiseAbs2().maxCoeff();
    return std::max(1.0, std::sqrt(3.0) * v);
  }
  (void)d;
  return std::max(1.0, std::sqrt(spec.population_fourth_moment()));
}

}  // namespace

Eigen::MatrixXd normalized_sum_sample(const GeneratorSpec& spec, long n, long d,
                                      long reps, RngStream& rng) {
  Eigen::MatrixXd S(reps, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  if (spec.family == GeneratorFamily::gaussian) {
    // S_n is exactly N(0, I) for any n.
    rng.fill_normal({S.data(), static_cast<std::size_t>(reps) * static_cast<std::size_t>(d)});
    return S;
  }
  if (spec.family == GeneratorFamily::factor_model) {
    // S_n = G + f a^T exactly, with G and f standard Gaussian.
    spec.validate(d);
    rng.fill_normal({S.data(), static_cast<std::size_t>(reps) * static_cast<std::size_t>(d)});
    Eigen::VectorXd f(reps);
    rng.fill_normal({f.data(), static_cast<std::size_t>(reps)});
    S.noalias() += f * spec.loadings.transpose();
    return S;
  }
  Eigen::MatrixXd buf(n, d);
  for (long r = 0; r < reps; ++r) {
    generate_into(spec, buf, rng);
    S.row(r) = buf.colwise().sum() * scale;
  }
  return S;
}

double fitted_loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long m = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) throw numerical_error("fitted_loglog_slope: fewer than 2 usable points");
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw numerical_error("fitted_loglog_slope: degenerate abscissae");
  return (m * sxy - sx * sy) / denom;
}

namespace {

struct YGrid {
  double epsilon = 0.0;
  double beta = 0.0;
  std::vector<double> shifts;  // scalar t values
};

// Gaussian-quantile-spaced scalar shifts spanning the central 99% of the
// reference max distribution; eps = epsilon_scale * IQR of that distribution.
YGrid make_y_grid(std::vector<double> ref_maxima, long d, double epsilon_scale,
                  int points = 21) {
  std::sort(ref_maxima.begin(), ref_maxima.end());
  auto q = [&](double p) {
    const double h = (static_cast<double>(ref_maxima.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= ref_maxima.size()) return ref_maxima.back();
    return ref_maxima[lo] + (h - lo) * (ref_maxima[lo + 1] - ref_maxima[lo]);
  };
  YGrid g;
  g.epsilon = epsilon_scale * (q(0.75) - q(0.25));
  if (!(g.epsilon > 0.0)) throw numerical_error("make_y_grid: degenerate reference");
  g.beta = std::log(static_cast<double>(d)) / g.epsilon;
  const double zmax = norm_ppf(0.995);
  for (int k = 0; k < points; ++k) {
    const double z = -zmax + 2.0 * zmax * k / (points - 1);
    g.shifts.push_back(q(norm_cdf(z)));
  }
  return g;
}

std::vector<double> matrix_row_maxima(const Eigen::MatrixXd& m) {
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    out[static_cast<std::size_t>(r)] = m.row(r).maxCoeff();
  return out;
}

std::vector<Eigen::VectorXd> shift_vectors(const YGrid& g, long d) {
  std::vector<Eigen::VectorXd> ys;
  for (double t : g.shifts) ys.push_back(Eigen::VectorXd::Constant(d, t));
  return ys;
}

// xi = 4 eta - 1 with eta ~ Beta(1/2,3/2), vectorized via the gamma-ratio
// representation.
void fill_beta_xi(RngStream& rng, Eigen::VectorXd& xi, Eigen::VectorXd& z1,
                  Eigen::VectorXd& z2, Eigen::VectorXd& e) {
  const std::size_t n = static_cast<std::size_t>(xi.size());
  z1.resize(xi.size());
  z2.resize(xi.size());
  e.resize(xi.size());
  rng.fill_normal({z1.data(), n});
  rng.fill_normal({z2.data(), n});
  rng.fill_exponential({e.data(), n});
  xi.array() = 4.0 * z1.array().square() /
                   (z1.array().square() + z2.array().square() + 2.0 * e.array()) -
               1.0;
}

}  // namespace

Table run_convergence_sweep(const ExperimentConfig& cfg) {
  double total = 0.0, resident = 0.0;
  for (long n : cfg.n_grid) {
    const long d = cfg.d_for(n);
    const double gen = has_gaussian_sum(cfg.generator)
                           ? static_cast<double>(cfg.reps) * d
                           : static_cast<double>(cfg.reps) * n * d;
    total += gen + static_cast<double>(cfg.reps) * d;
    resident = std::max(resident, 2.0 * static_cast<double>(cfg.reps) * d);
  }
  cfg.plan_check(total, resident);

  Table t;
  t.header = {"n", "d", "ks", "ks_se", "rect", "rect_se", "B_n",
              "delta_n1", "delta_n2", "theta", "bound", "slope"};
  std::vector<double> ns, kss;
  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const long n = cfg.n_grid[cell];
    const long d = cfg.d_for(n);
    RngStream rng = RngStream(cfg.master_seed, 0).substream(cell);
    const GeneratorSpec spec = cell_generator(cfg, d);
    Eigen::MatrixXd S = normalized_sum_sample(spec, n, d, cfg.reps, rng);
    CovarianceModel C = CovarianceModel::from_matrix(spec.population_covariance(d));
    Eigen::MatrixXd G = gaussian_analog_sample(C, cfg.reps, rng);

    DistanceReport ks;
    if (spec.family == GeneratorFamily::factor_model) {
      ks = ks_max_distance(S, G);
    } else {
      const double sigma = std::sqrt(spec.population_variance());
      const double dd = static_cast<double>(d);
      ks = ks_max_distance(
          S, [sigma, dd](double v) { return iid_gauss_max_cdf(v / sigma, dd); });
    }
    DistanceReport rect = rectangle_family_distance(S, G, cfg.K, rng);

    const double Bn = population_Bn(spec, d);
    const RateTerms rates = rate_terms(Bn, Bn, 4.0, static_cast<double>(n),
                                       static_cast<double>(d));
    const double theta =
        (std::sqrt(2.0 * std::log(static_cast<double>(d))) + 2.0) / C.sigma_min();
    const double bound = theorem_bound(theta, rates.delta_n1, rates.delta_n2);

    ns.push_back(static_cast<double>(n));
    kss.push_back(ks.value);
    t.rows.push_back({static_cast<double>(n), static_cast<double>(d), ks.value,
                      ks.se, rect.value, rect.se, Bn, rates.delta_n1,
                      rates.delta_n2, theta, bound, 0.0});
  }
  const double slope = fitted_loglog_slope(ns, kss);
  for (auto& row : t.rows) row.back() = slope;
  return t;
}

Table run_factor_sweep(const ExperimentConfig& cfg) {
  if (cfg.generator.family != GeneratorFamily::factor_model)
    throw config_error("factor_sweep requires generator.family = factor_model");
  if (!(cfg.factor_loading > 0.0))
    throw parameter_error("factor_sweep: zero factor loading");
  double resident = 0.0;
  for (long n : cfg.n_grid)
    resident = std::max(resident, 2.0 * static_cast<double>(cfg.reps) * cfg.d_for(n));
  cfg.plan_check(static_cast<double>(cfg.reps) * 2.0 * cfg.n_grid.size() *
                     static_cast<double>(cfg.d_for(cfg.n_grid.back())),
                 resident);

  Table t;
  t.header = {"n", "d", "ks", "ks_se", "rect", "rect_se", "a_min",
              "theta_factor", "theta_nazarov", "bound_factor", "bound_nazarov"};
  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const long n = cfg.n_grid[cell];
    const long d = cfg.d_for(n);
    RngStream rng = RngStream(cfg.master_seed, 1).substream(cell);
    const GeneratorSpec spec = cell_generator(cfg, d);
    Eigen::MatrixXd S = normalized_sum_sample(spec, n, d, cfg.reps, rng);
    CovarianceModel C = CovarianceModel::from_matrix(spec.population_covariance(d));
    Eigen::MatrixXd G = gaussian_analog_sample(C, cfg.reps, rng);

    DistanceReport ks = ks_max_distance(S, G);
    DistanceReport rect = rectangle_family_distance(S, G, cfg.K, rng);

    const double a_min = spec.loadings.cwiseAbs().minCoeff();
    const double theta_factor = 1.0 / (std::sqrt(2.0 * M_PI) * a_min);
    const double theta_nazarov =
        (std::sqrt(2.0 * std::log(static_cast<double>(d))) + 2.0) / C.sigma_min();
    const double Bn = population_Bn(spec, d);
    const RateTerms rates = rate_terms(Bn, Bn, 4.0, static_cast<double>(n),
                                       static_cast<double>(d));
    t.rows.push_back({static_cast<double>(n), static_cast<double>(d), ks.value,
                      ks.se, rect.value, rect.se, a_min, theta_factor,
                      theta_nazarov,
                      theorem_bound(theta_factor, rates.delta_n1, rates.delta_n2),
                      theorem_bound(theta_nazarov, rates.delta_n1, rates.delta_n2)});
  }
  return t;
}

Table run_lower_bound_demo(const ExperimentConfig& cfg) {
  double total = 0.0, resident = 0.0;
  for (long n : cfg.n_grid) {
    const long d = static_cast<long>(
        std::ceil(std::exp(std::cbrt(cfg.c * static_cast<double>(n)))));
    total += static_cast<double>(cfg.reps) * n * d;
    resident = std::max(resident, static_cast<double>(n) * d);
  }
  cfg.plan_check(total, resident);

  // gamma = 0 is the symmetric control; the skewed family has no zero-skewness
  // member, so the control uses the symmetric bounded generator instead.
  GeneratorSpec spec;
  if (cfg.gamma == 0.0) {
    spec.family = GeneratorFamily::bounded_iid;
    spec.scale = 1.0;
  } else {
    spec.family = GeneratorFamily::skewed_negative_third_moment;
    spec.skewness = cfg.gamma;
  }
  const double a = std::exp(cfg.gamma * std::sqrt(2.0 * cfg.c) / 3.0);
  const double predicted_gap = std::exp(-a) - std::exp(-1.0);

  Table t;
  t.header = {"n", "d", "x_n", "p_hat", "se", "reference", "gap", "a",
              "predicted_gap"};
  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const long n = cfg.n_grid[cell];
    const long d = static_cast<long>(
        std::ceil(std::exp(std::cbrt(cfg.c * static_cast<double>(n)))));
    const double xn = gumbel_xn(static_cast<double>(d));
    RngStream rng = RngStream(cfg.master_seed, 2).substream(cell);
    Eigen::MatrixXd buf(n, d);
    long hits = 0;
    for (long r = 0; r < cfg.reps; ++r) {
      generate_into(spec, buf, rng);
      const double m =
          buf.colwise().sum().maxCoeff() / std::sqrt(static_cast<double>(n));
      if (m <= xn) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(cfg.reps);
    const double se = std::sqrt(std::max(0.0, p * (1.0 - p)) /
                                static_cast<double>(cfg.reps));
    t.rows.push_back({static_cast<double>(n), static_cast<double>(d), xn, p, se,
                      std::exp(-1.0), p - std::exp(-1.0), a, predicted_gap});
  }
  return t;
}

Table run_cramer_ratio_check(const ExperimentConfig& cfg) {
  if (cfg.gamma == 0.0)
    throw config_error("cramer_ratio_check needs a skewed generator (gamma != 0)");
  GeneratorSpec spec;
  spec.family = GeneratorFamily::skewed_negative_third_moment;
  spec.skewness = cfg.gamma;

  Table t;
  t.header = {"n", "x", "gamma", "replications", "tail_hat", "ratio", "ratio_se",
              "prediction"};
  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const long n = cfg.n_grid[cell];
    const double tail = norm_sf(cfg.x);
    const double prediction = cramer_ratio(static_cast<double>(n), cfg.x, cfg.gamma);
    const double expected_hits =
        static_cast<double>(cfg.reps) * tail * std::min(1.0, prediction);
    if (expected_hits < 100.0)
      throw planning_error("cramer_ratio_check: expected tail hits " +
                           fmt17(expected_hits) + " < 100; raise mc.reps");
    // Batch the scalar replications as columns of one sum sample.
    const long cols = std::min<long>(1024, std::max<long>(3, cfg.reps));
    const long rows = (cfg.reps + cols - 1) / cols;
    cfg.plan_check(static_cast<double>(rows) * cols * n,
                   static_cast<double>(std::max<long>(rows * cols, n * cols)));
    RngStream rng = RngStream(cfg.master_seed, 3).substream(cell);
    Eigen::MatrixXd S = normalized_sum_sample(spec, n, cols, rows, rng);
    const double N = static_cast<double>(rows) * static_cast<double>(cols);
    const double hits = static_cast<double>((S.array() > cfg.x).count());
    const double p = hits / N;
    const double se_p = std::sqrt(std::max(0.0, p * (1.0 - p)) / N);
    t.rows.push_back({static_cast<double>(n), cfg.x, cfg.gamma, N, p, p / tail,
                      se_p / tail, prediction});
  }
  return t;
}

Table run_lindeberg_swap(const ExperimentConfig& cfg) {
  const long d = cfg.d_fixed;
  double total = 0.0;
  for (long n : cfg.n_grid) total += static_cast<double>(cfg.reps) * n * d;
  cfg.plan_check(total, static_cast<double>(cfg.n_grid.back()) * d);

  const GeneratorSpec spec = cell_generator(cfg, d);
  CovarianceModel C = CovarianceModel::from_matrix(spec.population_covariance(d));

  Table t;
  t.header = {"n", "d", "gap", "se", "epsilon", "beta", "slope"};
  std::vector<double> ns, gaps;
  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const long n = cfg.n_grid[cell];
    RngStream rng = RngStream(cfg.master_seed, 4).substream(cell);
    RngStream ref_rng = rng.substream(1);
    YGrid grid = make_y_grid(
        matrix_row_maxima(gaussian_analog_sample(C, 20000, ref_rng)), d,
        cfg.epsilon_scale);
    SmoothIndicator h =
        SmoothIndicator::build(IntervalSet::half_line_leq(0.0), grid.epsilon);

    // Coupled pair: S^X and S^{xi X} share the data draw; only the multiplier
    // noise separates them, and the laws differ first at the fourth moment.
    auto state = std::make_shared<Eigen::VectorXd>();
    auto buf = std::make_shared<Eigen::MatrixXd>(n, d);
    auto xi = std::make_shared<Eigen::VectorXd>(n);
    auto z1 = std::make_shared<Eigen::VectorXd>(), z2 = std::make_shared<Eigen::VectorXd>(),
         ex = std::make_shared<Eigen::VectorXd>();
    RngStream pair_rng = rng.substream(2);
    auto rng_ptr = std::make_shared<RngStream>(pair_rng);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    VectorSampler sampler_f = [=]() mutable {
      generate_into(spec, *buf, *rng_ptr);
      fill_beta_xi(*rng_ptr, *xi, *z1, *z2, *ex);
      *state = (buf->transpose() * *xi) * scale;  // S^{xi X}
      return Eigen::VectorXd((buf->colwise().sum() * scale).transpose());
    };
    VectorSampler sampler_g = [=]() { return *state; };

    DistanceReport rep = rho_h_beta_estimate(sampler_f, sampler_g, h, grid.beta,
                                             shift_vectors(grid, d), cfg.reps);
    ns.push_back(static_cast<double>(n));
    gaps.push_back(rep.value);
    t.rows.push_back({static_cast<double>(n), static_cast<double>(d), rep.value,
                      rep.se, grid.epsilon, grid.beta, 0.0});
  }
  const double slope = fitted_loglog_slope(ns, gaps);
  for (auto& row : t.rows) row.back() = slope;
  return t;
}

Table run_stein_route(const ExperimentConfig& cfg) {
  const long d = cfg.d_fixed;
  const MultiplierLaw law = beta_transformed_law();

  Table t;
  t.header = {"n", "d", "trial", "gap", "se", "kernel_dev", "rhs", "margin",
              "hoeffding"};
  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const long n = cfg.n_grid[cell];
    cfg.plan_check(static_cast<double>(cfg.data_draws) * cfg.reps * (n + d),
                   static_cast<double>(n) * d);
    for (long trial = 0; trial < cfg.data_draws; ++trial) {
      RngStream rng = RngStream(cfg.master_seed, 5)
                          .substream(cell * 1000 + static_cast<std::uint64_t>(trial));
      SampleMatrix X = generate(cell_generator(cfg, d), n, d, rng);
      Eigen::MatrixXd A = X.values / std::sqrt(static_cast<double>(n));
      CovarianceModel gram =
          CovarianceModel::from_matrix(A.transpose() * A, 1e-8);

      RngStream ref_rng = rng.substream(1);
      YGrid grid = make_y_grid(
          matrix_row_maxima(gaussian_analog_sample(gram, 20000, ref_rng)), d,
          cfg.epsilon_scale);
      SmoothIndicator h =
          SmoothIndicator::build(IntervalSet::half_line_leq(0.0), grid.epsilon);

      auto rng_f = std::make_shared<RngStream>(rng.substream(2));
      auto rng_g = std::make_shared<RngStream>(rng.substream(3));
      auto xi = std::make_shared<Eigen::VectorXd>(n);
      auto z1 = std::make_shared<Eigen::VectorXd>(), z2 = std::make_shared<Eigen::VectorXd>(),
           ex = std::make_shared<Eigen::VectorXd>();
      VectorSampler sampler_f = [=]() {
        fill_beta_xi(*rng_f, *xi, *z1, *z2, *ex);
        return Eigen::VectorXd(A.transpose() * *xi);
      };
      auto zbuf = std::make_shared<Eigen::VectorXd>(gram.root.cols());
      VectorSampler sampler_g = [=]() {
        for (Eigen::Index i = 0; i < zbuf->size(); ++i) (*zbuf)(i) = rng_g->normal();
        return Eigen::VectorXd(gram.root * *zbuf);
      };
      DistanceReport rep = rho_h_beta_estimate(sampler_f, sampler_g, h, grid.beta,
                                               shift_vectors(grid, d), cfg.reps);

      RngStream dev_rng = rng.substream(4);
      const double dev = linear_form_kernel_deviation(A, law, dev_rng, 2000);
      const double prefac =
          1.5 * std::max(h.derivative_bound(2), grid.beta * h.derivative_bound(1));
      const double rhs = prefac * dev;
      t.rows.push_back({static_cast<double>(n), static_cast<double>(d),
                        static_cast<double>(trial), rep.value, rep.se, dev, rhs,
                        rhs - rep.value, hoeffding_bound(A, law)});
    }
  }
  return t;
}

Table run_bootstrap_coverage(const ExperimentConfig& cfg) {
  const long d = cfg.d_fixed;
  const long n = cfg.n_grid.front();
  const MultiplierLaw law = beta_transformed_law();
  cfg.plan_check(static_cast<double>(cfg.reps) * (n * d + cfg.R * (n + d)),
                 static_cast<double>(cfg.R) * std::max<long>(n, d));

  long covered = 0;
  double sum_c = 0.0, sum_width = 0.0;
  const Eigen::VectorXd truth = Eigen::VectorXd::Zero(d);
  for (long trial = 0; trial < cfg.reps; ++trial) {
    RngStream rng =
        RngStream(cfg.master_seed, 6).substream(static_cast<std::uint64_t>(trial));
    SampleMatrix X = generate(cell_generator(cfg, d), n, d, rng);
    SimultaneousBand band =
        simultaneous_band(X, law, cfg.alpha, cfg.R, rng, /*studentize=*/true);
    if (band.covers(truth)) ++covered;
    sum_c += band.critical_value;
    sum_width += band.half_width.mean();
  }
  Table t;
  t.header = {"trials", "covered", "coverage", "alpha", "mean_critical",
              "mean_half_width"};
  const double trials = static_cast<double>(cfg.reps);
  t.rows.push_back({trials, static_cast<double>(covered),
                    static_cast<double>(covered) / trials, cfg.alpha,
                    sum_c / trials, sum_width / trials});
  return t;
}

Table run_bootstrap_trend(const ExperimentConfig& cfg) {
  const long d = cfg.d_fixed;
  const MultiplierLaw law = beta_transformed_law();
  Table t;
  t.header = {"n", "d", "rho_mean", "rho_se", "draws", "R", "K"};
  for (std::size_t cell = 0; cell < cfg.n_grid.size(); ++cell) {
    const long n = cfg.n_grid[cell];
    cfg.plan_check(static_cast<double>(cfg.data_draws) *
                       (static_cast<double>(n) * d + 2.0 * cfg.R * (n + d)),
                   2.0 * static_cast<double>(cfg.R) * d);
    const GeneratorSpec spec = cell_generator(cfg, d);
    CovarianceModel C = CovarianceModel::from_matrix(spec.population_covariance(d));
    double sum = 0.0, sumsq = 0.0;
    for (long draw = 0; draw < cfg.data_draws; ++draw) {
      RngStream rng = RngStream(cfg.master_seed, 7)
                          .substream(cell * 1000 + static_cast<std::uint64_t>(draw));
      SampleMatrix X = generate(spec, n, d, rng);
      DistanceReport rep = rho_wb_estimate(X, law, C, cfg.R, rng, cfg.K);
      sum += rep.value;
      sumsq += rep.value * rep.value;
    }
    const double m = static_cast<double>(cfg.data_draws);
    const double mean = sum / m;
    const double var = std::max(0.0, sumsq / m - mean * mean);
    t.rows.push_back({static_cast<double>(n), static_cast<double>(d), mean,
                      std::sqrt(var / m), m, static_cast<double>(cfg.R),
                      static_cast<double>(cfg.K)});
  }
  return t;
}

BoundReport run_bound_report(const ExperimentConfig& cfg) {
  const long n = cfg.n_grid.front();
  const long d = cfg.d_for(n);
  cfg.plan_check(static_cast<double>(n) * d + 20000.0 * d,
                 static_cast<double>(std::max<long>(n, 20000)) * d);
  RngStream rng = RngStream(cfg.master_seed, 8);
  const GeneratorSpec spec = cell_generator(cfg, d);
  SampleMatrix X = generate(spec, n, d, rng);
  CovarianceModel C = CovarianceModel::from_matrix(spec.population_covariance(d));

  RngStream ref_rng = rng.substream(1);
  YGrid grid = make_y_grid(
      matrix_row_maxima(gaussian_analog_sample(C, 20000, ref_rng)), d,
      cfg.epsilon_scale);

  BoundReport rep;
  rep.B_n = empirical_Bn(X);
  if (spec.family == GeneratorFamily::heavy_tail_q) {
    rep.q = spec.tail_q;
    rep.D_n = std::max(1.0, spec.heavy_tail_dn(d));
  } else {
    rep.q = 4.0;
    rep.D_n = rep.B_n;
  }
  const RateTerms rates = rate_terms(rep.B_n, rep.D_n, rep.q,
                                     static_cast<double>(n), static_cast<double>(d));
  rep.delta_n1 = rates.delta_n1;
  rep.delta_n2 = rates.delta_n2;
  rep.delta_n2_q = rates.delta_n2_q;
  rep.epsilon = grid.epsilon;
  const CouplingFunctionals f = coupling_functionals(X, C, grid.epsilon);
  rep.Delta_n0 = f.Delta_n0;
  rep.Delta_n1 = f.Delta_n1;
  rep.Delta_n2_eps = f.Delta_n2_eps;
  rep.coupling_rhs = coupling_rhs(f, static_cast<double>(n),
                                  static_cast<double>(d), grid.epsilon);
  rep.theta_bound_nazarov =
      (std::sqrt(2.0 * std::log(static_cast<double>(d))) + 2.0) / C.sigma_min();
  if (spec.family == GeneratorFamily::factor_model) {
    const double a_min = spec.loadings.cwiseAbs().minCoeff();
    rep.theta_bound_factor = 1.0 / (std::sqrt(2.0 * M_PI) * a_min);
  }
  rep.theta_bound = rep.theta_bound_factor > 0.0
                        ? std::min(rep.theta_bound_nazarov, rep.theta_bound_factor)
                        : rep.theta_bound_nazarov;
  rep.total = theorem_bound(rep.theta_bound, rep.delta_n1, rep.delta_n2);
  return rep;
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw numerical_error("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << fmt17(row[i]);
    out << "\n";
  }
  if (!out) throw config_error("write failed for '" + path + "'");
}

void write_manifest(const std::string& path, const Config& cfg,
                    std::uint64_t seed, double wall_seconds) {
  nlohmann::json m;
  m["config_hash"] = cfg.hash();
  m["master_seed"] = seed;
  m["versions"]["hdclt"] = kVersion;
  m["versions"]["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                           std::to_string(EIGEN_MAJOR_VERSION) + "." +
                           std::to_string(EIGEN_MINOR_VERSION);
  m["versions"]["compiler"] = __VERSION__;
  m["wall_seconds"] = wall_seconds;
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << m.dump(2) << "\n";
}

std::string bound_report_json(const BoundReport& r) {
  std::ostringstream out;
  out << "{\n";
  auto field = [&](const char* name, double v, bool last = false) {
    out << "  \"" << name << "\": " << fmt17(v) << (last ? "\n" : ",\n");
  };
  field("B_n", r.B_n);
  field("D_n", r.D_n);
  field("q", r.q);
  field("delta_n1", r.delta_n1);
  field("delta_n2", r.delta_n2);
  field("delta_n2_q", r.delta_n2_q);
  field("Delta_n0", r.Delta_n0);
  field("Delta_n1", r.Delta_n1);
  field("Delta_n2_eps", r.Delta_n2_eps);
  field("epsilon", r.epsilon);
  field("coupling_rhs", r.coupling_rhs);
  field("theta_bound_nazarov", r.theta_bound_nazarov);
  field("theta_bound_factor", r.theta_bound_factor);
  field("theta_bound", r.theta_bound);
  field("total", r.total, true);
  out << "}\n";
  return out.str();
}

}  // namespace hdclt
