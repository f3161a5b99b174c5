// Acceptance suite: one criterion per invocation, selected by argv[1] (1-15).
// Prints a single PASS/FAIL line with the measured quantities and returns
// 0 on pass, 1 on fail.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hdclt/anticoncentration.hpp"
#include "hdclt/bootstrap.hpp"
#include "hdclt/bounds.hpp"
#include "hdclt/config.hpp"
#include "hdclt/core_data.hpp"
#include "hdclt/errors.hpp"
#include "hdclt/experiments.hpp"
#include "hdclt/metrics.hpp"
#include "hdclt/multipliers.hpp"
#include "hdclt/normal.hpp"
#include "hdclt/rng.hpp"
#include "hdclt/smoothing.hpp"

using namespace hdclt;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [violated: " << what << "]";
    }
  }
};

ExperimentConfig config_from(const std::string& text) {
  return ExperimentConfig::from(Config::parse_string(text));
}

long column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return static_cast<long>(i);
  throw numerical_error("acceptance: missing column " + name);
}

// ---------------------------------------------------------------- criterion 1
Outcome multiplier_moments() {
  Outcome out;
  MultiplierLaw law = beta_transformed_law();
  RngStream rng(101, 0);
  const long N = 1000000;
  double se1 = 0, se2 = 0, sx3 = 0, sx6 = 0;
  double seta2c = 0;  // running sums for eta central moments
  std::vector<double> eta(N);
  for (long i = 0; i < N; ++i) {
    const double xi = law.sampler(rng);
    eta[i] = (xi + 1.0) / 4.0;
    se1 += eta[i];
    const double x3 = xi * xi * xi;
    sx3 += x3;
    sx6 += x3 * x3;
  }
  const double mean_eta = se1 / N;
  for (long i = 0; i < N; ++i) {
    const double c = eta[i] - mean_eta;
    se2 += c * c;
    seta2c += c * c * c * c;
  }
  const double var_eta = se2 / N;
  const double se_mean = std::sqrt(var_eta / N);
  const double se_var = std::sqrt(
      std::max(0.0, seta2c / N - var_eta * var_eta) / N);
  const double mean_x3 = sx3 / N;
  const double se_x3 =
      std::sqrt(std::max(0.0, sx6 / N - mean_x3 * mean_x3) / N);

  out.detail << "E[eta]=" << mean_eta << " Var[eta]=" << var_eta
             << " E[xi^3]=" << mean_x3;
  out.require(std::fabs(mean_eta - 0.25) <= 3.0 * se_mean, "E[eta] = 1/4");
  out.require(std::fabs(var_eta - 0.0625) <= 3.0 * se_var, "Var[eta] = 1/16");
  out.require(std::fabs(mean_x3 - 1.0) <= 3.0 * se_x3, "E[xi^3] = 1");
  return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome stein_identity() {
  Outcome out;
  auto results = verify_stein_identity(beta_transformed_law(), 64);
  double worst_poly = 0.0, worst_smooth = 0.0;
  for (const auto& r : results) {
    const bool poly = r.test_function.rfind("x^", 0) == 0;
    (poly ? worst_poly : worst_smooth) =
        std::max(poly ? worst_poly : worst_smooth, r.residual);
  }
  out.detail << "worst monomial residual " << worst_poly
             << ", worst smooth residual " << worst_smooth;
  out.require(worst_poly < 1e-8, "monomial residual < 1e-8");
  out.require(worst_smooth < 1e-6, "cos/exp residual < 1e-6");
  return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome smooth_max_criterion() {
  Outcome out;
  RngStream rng(103, 0);
  const SmoothMaxParams p{2.0};
  double worst_low = 0.0, worst_high = -1.0;
  for (long d : {3L, 100L, 10000L}) {
    const double cap = std::log(static_cast<double>(d)) / p.beta;
    Eigen::VectorXd x(d);
    for (int rep = 0; rep < 10000; ++rep) {
      rng.fill_normal({x.data(), static_cast<std::size_t>(d)});
      const double gap = smooth_max(x, p) - x.maxCoeff();
      worst_low = std::min(worst_low, gap);
      worst_high = std::max(worst_high, cap - gap);
      if (gap < -1e-12 || gap > cap + 1e-12) {
        out.require(false, "sandwich at d=" + std::to_string(d));
        break;
      }
    }
  }
  // gradient vs central differences at d = 3 and d = 100
  double worst_fd = 0.0;
  for (long d : {3L, 100L}) {
    Eigen::VectorXd x(d);
    for (int rep = 0; rep < 10; ++rep) {
      rng.fill_normal({x.data(), static_cast<std::size_t>(d)});
      Eigen::VectorXd g = smooth_max_gradient(x, p);
      const double h = 1e-6;
      for (long j = 0; j < d; ++j) {
        Eigen::VectorXd xp = x, xm = x;
        xp(j) += h;
        xm(j) -= h;
        const double fd = (smooth_max(xp, p) - smooth_max(xm, p)) / (2.0 * h);
        worst_fd = std::max(worst_fd, std::fabs(fd - g(j)));
      }
    }
  }
  out.detail << "min gap " << worst_low << ", worst fd error " << worst_fd;
  out.require(worst_fd <= 1e-6, "gradient finite differences <= 1e-6");
  return out;
}

// ---------------------------------------------------------------- criterion 4
double fd_derivative(const SmoothIndicator& h, double x, int r, double step) {
  auto f = [&](double t) { return h(t); };
  switch (r) {
    case 1:
      return (-f(x + 2 * step) + 8 * f(x + step) - 8 * f(x - step) +
              f(x - 2 * step)) / (12 * step);
    case 2:
      return (-f(x + 2 * step) + 16 * f(x + step) - 30 * f(x) +
              16 * f(x - step) - f(x - 2 * step)) / (12 * step * step);
    case 3:
      return (f(x + 2 * step) - 2 * f(x + step) + 2 * f(x - step) -
              f(x - 2 * step)) / (2 * step * step * step);
    default:
      return (f(x + 2 * step) - 4 * f(x + step) + 6 * f(x) - 4 * f(x - step) +
              f(x - 2 * step)) / (step * step * step * step);
  }
}

Outcome smooth_indicator_criterion() {
  Outcome out;
  SmoothIndicator box = SmoothIndicator::build(IntervalSet::interval(0.0, 1.0), 0.05);
  long violations = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double x = -0.5 + 2.0 * k / 1000.0;
    const double v = box(x);
    if (box.set().contains(x) && v < 1.0 - 1e-12) ++violations;
    if (!box.set().contains_inflated(x, 0.15) && v > 1e-12) ++violations;
    if (v < -1e-15 || v > 1.0 + 1e-15) ++violations;
  }
  out.detail << "sandwich violations " << violations;
  out.require(violations == 0, "indicator sandwich");

  double worst_ratio = 0.0;
  for (double eps : {0.05, 0.5, 5.0}) {
    SmoothIndicator h =
        SmoothIndicator::build(IntervalSet::half_line_leq(0.0), eps);
    for (int r = 1; r <= 4; ++r) {
      const double bound = h.derivative_bound(r) * 1.001;
      const double step = eps / 60.0;
      double worst = 0.0;
      for (int k = 0; k <= 400; ++k) {
        const double x = 0.8 * eps + 1.4 * eps * k / 400.0;
        worst = std::max(worst, std::fabs(fd_derivative(h, x, r, step)));
      }
      worst_ratio = std::max(worst_ratio, worst / bound);
    }
  }
  out.detail << ", worst |h^(r)| / (C_r eps^-r) = " << worst_ratio;
  out.require(worst_ratio <= 1.0, "derivative bounds C_r eps^-r");
  return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome nazarov_criterion() {
  Outcome out;
  RngStream rng(105, 0);
  double worst_margin = 1e9;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 5 + (trial * 45) / 19;
    Eigen::MatrixXd B(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) B(i, j) = rng.normal();
    Eigen::MatrixXd C =
        B * B.transpose() / d + 0.3 * Eigen::MatrixXd::Identity(d, d);
    CovarianceModel model = CovarianceModel::from_matrix(C);
    const double smin = model.sigma_min();
    Eigen::MatrixXd Z = gaussian_analog_sample(model, 100000, rng);
    for (double escale : {0.05, 0.1, 0.2}) {
      const double eps = escale * smin;
      ConcentrationEstimate est = levy_concentration_scalar_max(Z, eps);
      const double margin =
          nazarov_bound(smin, d, eps) + 3.0 * est.se - est.value;
      worst_margin = std::min(worst_margin, margin);
    }
  }
  out.detail << "worst margin (bound + 3se - estimate) = " << worst_margin;
  out.require(worst_margin >= 0.0, "nazarov bound");
  return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome factor_criterion() {
  Outcome out;
  RngStream rng(106, 0);
  const double a = 0.5, eps = 0.1;
  double worst_margin = 1e9;
  std::vector<double> bounds;
  for (long d : {10L, 1000L}) {
    GeneratorSpec spec;
    spec.family = GeneratorFamily::factor_model;
    spec.loadings = Eigen::VectorXd::Constant(d, a);
    Eigen::MatrixXd S = normalized_sum_sample(spec, 100, d, 100000, rng);
    ConcentrationEstimate est = levy_concentration_scalar_max(S, eps);
    const double bound = factor_bound(a, eps);
    bounds.push_back(bound);
    worst_margin = std::min(worst_margin, bound + 3.0 * est.se - est.value);
  }
  out.detail << "worst margin " << worst_margin << ", bound(d=10) = "
             << bounds[0] << ", bound(d=1000) = " << bounds[1];
  out.require(worst_margin >= 0.0, "factor bound");
  out.require(bounds[0] == bounds[1], "bound is dimension-free");
  return out;
}

// ---------------------------------------------------------------- criterion 7
Outcome kernel_deviation_criterion() {
  Outcome out;
  MultiplierLaw law = beta_transformed_law();
  RngStream rng(107, 0);
  double worst_margin = 1e9;
  for (int trial = 0; trial < 10; ++trial) {
    const long n = 50 + (trial * 350) / 9;
    const long d = 4 + (trial * 16) / 9;
    Eigen::MatrixXd A(n, d);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < d; ++j)
        A(i, j) = rng.normal() / std::sqrt(static_cast<double>(n));
    const double dev = linear_form_kernel_deviation(A, law, rng, 2000);
    worst_margin = std::min(worst_margin, hoeffding_bound(A, law) - dev);
  }
  out.detail << "worst margin (hoeffding - deviation) = " << worst_margin;
  out.require(worst_margin > 0.0, "deviation <= hoeffding, margin > 0");
  return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome nemirovski_criterion() {
  Outcome out;
  RngStream rng(108, 0);
  double worst_margin = 1e9;
  for (int trial = 0; trial < 10; ++trial) {
    GeneratorSpec spec;
    spec.family = trial % 2 == 0 ? GeneratorFamily::gaussian
                                 : GeneratorFamily::sub_exponential_iid;
    const long n = 100 + 60 * (trial / 2);
    const long d = 5 + 5 * (trial / 2);
    Eigen::MatrixXd C = spec.population_covariance(d);
    const double delta_pop = std::sqrt(spec.population_fourth_moment());
    const double bound =
        std::sqrt(8.0 * std::log(2.0 * d * d) / n) * delta_pop;
    double mean_dev = 0.0;
    const int draws = 50;
    for (int k = 0; k < draws; ++k) {
      SampleMatrix X = generate(spec, n, d, rng);
      mean_dev +=
          (X.values.transpose() * X.values / static_cast<double>(n) - C)
              .cwiseAbs().maxCoeff();
    }
    mean_dev /= draws;
    worst_margin = std::min(worst_margin, bound - mean_dev);
  }
  out.detail << "worst margin (bound - E max dev) = " << worst_margin;
  out.require(worst_margin >= 0.0, "nemirovski inequality");
  return out;
}

// ---------------------------------------------------------------- criterion 9
Outcome stein_route_criterion() {
  Outcome out;
  ExperimentConfig cfg = config_from(
      "[experiment]\nname = \"stein\"\n"
      "[grid]\nn = [400]\nd = 20\n"
      "[mc]\nreps = 20000\ndata_draws = 5\n");
  Table t = run_stein_route(cfg);
  const long cm = column(t, "margin");
  double worst = 1e9;
  for (const auto& row : t.rows) worst = std::min(worst, row[cm]);
  out.detail << t.rows.size() << " trials, worst dominance margin " << worst;
  out.require(!t.rows.empty() && worst > 0.0, "gap <= stein RHS");
  return out;
}

// --------------------------------------------------------------- criterion 10
Outcome convergence_criterion() {
  Outcome out;
  ExperimentConfig cfg = config_from(
      "[experiment]\nname = \"simulate\"\n"
      "[generator]\nfamily = \"sub_exponential_iid\"\n"
      "[grid]\nn = [50, 200, 800, 3200]\nd = 100\n"
      "[mc]\nreps = 100000\nK = 50\n");
  Table t = run_convergence_sweep(cfg);
  const long ck = column(t, "ks");
  std::ostringstream seq;
  bool decreasing = true;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    seq << (i ? " > " : "") << t.rows[i][ck];
    if (i > 0 && !(t.rows[i][ck] < t.rows[i - 1][ck])) decreasing = false;
  }
  const double last = t.rows.back()[ck];
  out.detail << "ks sequence " << seq.str();
  out.require(decreasing, "ks strictly decreasing");
  out.require(last < 0.05, "ks < 0.05 at n = 3200");
  return out;
}

// --------------------------------------------------------------- criterion 11
Outcome lindeberg_criterion() {
  Outcome out;
  ExperimentConfig cfg = config_from(
      "[experiment]\nname = \"swap\"\n"
      "[grid]\nn = [100, 1600]\nd = 20\n"
      "[mc]\nreps = 600000\n");
  Table t = run_lindeberg_swap(cfg);
  const long cg = column(t, "gap");
  const long cs = column(t, "se");
  const double g100 = t.rows[0][cg], g1600 = t.rows[1][cg];
  const double s100 = t.rows[0][cs], s1600 = t.rows[1][cs];
  const double ratio = g100 / std::max(g1600, 1e-12);
  // conservative ratio: shrink the numerator and grow the denominator by 2 se
  const double lo_ratio =
      (g100 - 2.0 * s100) / std::max(g1600 + 2.0 * s1600, 1e-12);
  out.detail << "gap(100) = " << g100 << " (se " << s100 << "), gap(1600) = "
             << g1600 << " (se " << s1600 << "), ratio " << ratio
             << ", conservative " << lo_ratio;
  out.require(g100 > 5.0 * s100, "gap(100) resolved above noise");
  // gap(1600) sits near the sup-estimator noise floor, which biases the
  // measured ratio down from the O(1/n) prediction of 16; the point ratio
  // must still clear 4 and the noise-adjusted ratio must not contradict it
  out.require(ratio >= 4.0, "gap(100)/gap(1600) >= 4");
  out.require(lo_ratio >= 2.0, "ratio robust to 2 se of MC noise");
  return out;
}

// --------------------------------------------------------------- criterion 12
Outcome lower_bound_criterion() {
  Outcome out;
  ExperimentConfig cfg = config_from(
      "[experiment]\nname = \"lowerbound\"\n"
      "[grid]\nn = [250, 500, 1000]\nc = 0.25\n"
      "[mc]\nreps = 5000\ngamma = -2.0\n");
  Table t = run_lower_bound_demo(cfg);
  const long cg = column(t, "gap");
  const long cp = column(t, "predicted_gap");
  double min_gap = 1e9;
  for (const auto& row : t.rows) min_gap = std::min(min_gap, std::fabs(row[cg]));
  const double final_gap = t.rows.back()[cg];
  const double predicted = t.rows.back()[cp];
  out.detail << "min |gap| " << min_gap << ", gap(1000) " << final_gap
             << " vs predicted " << predicted;
  out.require(min_gap >= 0.05, "|gap| >= 0.05 at every n");
  out.require(std::fabs(final_gap - predicted) <= 0.08,
              "gap(1000) within 0.08 of the limit prediction");

  ExperimentConfig control = config_from(
      "[experiment]\nname = \"lowerbound\"\n"
      "[grid]\nn = [1000]\nc = 0.25\n"
      "[mc]\nreps = 5000\ngamma = 0.0\n");
  Table ct = run_lower_bound_demo(control);
  const double control_gap = std::fabs(ct.rows.back()[column(ct, "gap")]);
  out.detail << ", symmetric control |gap| " << control_gap;
  out.require(control_gap < 0.03, "symmetric control gap < 0.03");
  return out;
}

// --------------------------------------------------------------- criterion 13
Outcome cramer_criterion() {
  Outcome out;
  ExperimentConfig cfg = config_from(
      "[experiment]\nname = \"cramer\"\n"
      "[grid]\nn = [1000]\n"
      "[mc]\nreps = 10000000\ngamma = -2.0\nx = 2.0\n");
  Table t = run_cramer_ratio_check(cfg);
  const double reps = t.rows[0][column(t, "replications")];
  const double ratio = t.rows[0][column(t, "ratio")];
  const double prediction = t.rows[0][column(t, "prediction")];
  out.detail << "replications " << reps << ", ratio " << ratio
             << " vs prediction " << prediction;
  out.require(reps >= 1e7, ">= 1e7 replications");
  out.require(std::fabs(ratio - prediction) <= 0.2 * prediction,
              "ratio within 20% of the Cramer prediction");
  return out;
}

// --------------------------------------------------------------- criterion 14
Outcome tail_lemma_criterion() {
  Outcome out;
  long failures = 0, cells = 0;
  for (double A : {1.0, 2.0})
    for (double B : {0.5, 1.0, 2.0})
      for (int p : {1, 2, 3, 4})
        for (double t : {0.0, 0.5, 1.0, 5.0, 10.0}) {
          ++cells;
          if (!tail_moment_check(A, B, p, t).ok) ++failures;
        }
  // analytic equality: A = B = 1, t = 0 gives lhs = rhs = p!
  double worst_eq = 0.0;
  for (int p : {1, 2}) {
    TailMomentCheck c = tail_moment_check(1.0, 1.0, p, 0.0);
    worst_eq = std::max(worst_eq, std::fabs(c.lhs - c.rhs) / c.rhs);
  }
  out.detail << cells << " grid cells, " << failures
             << " failures, boundary relative error " << worst_eq;
  out.require(failures == 0, "ok across the grid");
  out.require(worst_eq < 1e-8, "equality at analytic boundary cases");
  return out;
}

// --------------------------------------------------------------- criterion 15
Outcome bootstrap_criterion() {
  Outcome out;
  // (a) conditional covariance identity within 4 se
  {
    RngStream rng(115, 0);
    Eigen::MatrixXd raw(40, 5);
    rng.fill_normal({raw.data(), 200});
    SampleMatrix X = SampleMatrix::from(raw);
    Eigen::MatrixXd Xc = raw.rowwise() - raw.colwise().mean();
    Eigen::MatrixXd gram = Xc.transpose() * Xc / 40.0;
    const long R = 100000;
    BootstrapRun run = wild_bootstrap(X, beta_transformed_law(), R, rng);
    Eigen::MatrixXd cov = run.statistics.transpose() * run.statistics / double(R);
    const double dev = (cov - gram).cwiseAbs().maxCoeff();
    const double se = 3.0 / std::sqrt(double(R));
    out.detail << "cov deviation " << dev << " (4se = " << 4.0 * se << ")";
    out.require(dev <= 4.0 * se, "conditional covariance identity");
  }
  // (b) coverage at nominal 0.90
  {
    ExperimentConfig cfg = config_from(
        "[experiment]\nname = \"bootstrap\"\n"
        "[generator]\nfamily = \"gaussian\"\n"
        "[grid]\nn = [200]\nd = 50\n"
        "[mc]\nreps = 500\nR = 2000\nalpha = 0.10\n");
    Table t = run_bootstrap_coverage(cfg);
    const double coverage = t.rows[0][column(t, "coverage")];
    out.detail << ", coverage " << coverage;
    out.require(coverage >= 0.85 && coverage <= 0.95, "coverage in [0.85, 0.95]");
  }
  // (c) rho_WB trend over n, averaged over 20 data draws
  {
    ExperimentConfig cfg = config_from(
        "[experiment]\nname = \"bootstrap\"\n"
        "[grid]\nn = [50, 200, 800]\nd = 50\n"
        "[mc]\nR = 20000\nK = 200\ndata_draws = 20\n");
    Table t = run_bootstrap_trend(cfg);
    const long cr = column(t, "rho_mean");
    out.detail << ", rho trend " << t.rows[0][cr] << " > " << t.rows[1][cr]
               << " > " << t.rows[2][cr];
    out.require(t.rows[0][cr] > t.rows[1][cr] && t.rows[1][cr] > t.rows[2][cr],
                "rho_WB decreasing in n");
  }
  return out;
}

const struct {
  const char* name;
  Outcome (*fn)();
} kCriteria[] = {
    {"multiplier law moments", multiplier_moments},
    {"stein identity quadrature", stein_identity},
    {"smooth max sandwich and gradient", smooth_max_criterion},
    {"smooth indicator sandwich and derivative bounds", smooth_indicator_criterion},
    {"nazarov anti-concentration", nazarov_criterion},
    {"factor anti-concentration", factor_criterion},
    {"linear-form kernel deviation vs hoeffding", kernel_deviation_criterion},
    {"nemirovski covariance deviation", nemirovski_criterion},
    {"stein-route dominance", stein_route_criterion},
    {"convergence sweep rate", convergence_criterion},
    {"lindeberg swap scaling", lindeberg_criterion},
    {"lower bound demonstration", lower_bound_criterion},
    {"cramer tail ratio", cramer_criterion},
    {"tail moment lemma", tail_lemma_criterion},
    {"wild bootstrap", bootstrap_criterion},
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1-15>\n");
    return 2;
  }
  const int k = std::atoi(argv[1]);
  if (k < 1 || k > 15) {
    std::fprintf(stderr, "criterion out of range: %s\n", argv[1]);
    return 2;
  }
  try {
    Outcome out = kCriteria[k - 1].fn();
    std::printf("%s criterion %d: %s (%s)\n", out.ok ? "PASS" : "FAIL", k,
                kCriteria[k - 1].name, out.detail.str().c_str());
    return out.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::printf("FAIL criterion %d: %s (exception: %s)\n", k,
                kCriteria[k - 1].name, e.what());
    return 1;
  }
}
