#include "hdclt/core_data.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hdclt/errors.hpp"

namespace hdclt {

SampleMatrix SampleMatrix::from(Eigen::MatrixXd m) {
  if (m.rows() < 3 || m.cols() < 3)
    throw parameter_error("SampleMatrix: need n >= 3 and d >= 3");
  if (!m.allFinite()) throw parameter_error("SampleMatrix: non-finite entry");
  return SampleMatrix{std::move(m)};
}

GeneratorFamily generator_family_from_string(const std::string& s) {
  if (s == "sub_exponential_iid") return GeneratorFamily::sub_exponential_iid;
  if (s == "bounded_iid") return GeneratorFamily::bounded_iid;
  if (s == "heavy_tail_q") return GeneratorFamily::heavy_tail_q;
  if (s == "factor_model") return GeneratorFamily::factor_model;
  if (s == "skewed_negative_third_moment")
    return GeneratorFamily::skewed_negative_third_moment;
  if (s == "gaussian") return GeneratorFamily::gaussian;
  throw parameter_error("unknown generator family: " + s);
}

std::string to_string(GeneratorFamily f) {
  switch (f) {
    case GeneratorFamily::sub_exponential_iid: return "sub_exponential_iid";
    case GeneratorFamily::bounded_iid: return "bounded_iid";
    case GeneratorFamily::heavy_tail_q: return "heavy_tail_q";
    case GeneratorFamily::factor_model: return "factor_model";
    case GeneratorFamily::skewed_negative_third_moment:
      return "skewed_negative_third_moment";
    case GeneratorFamily::gaussian: return "gaussian";
  }
  return "?";
}

void GeneratorSpec::validate(Eigen::Index d) const {
  switch (family) {
    case GeneratorFamily::sub_exponential_iid:
    case GeneratorFamily::bounded_iid:
      if (scale <= 0.0) throw parameter_error("generator: scale must be positive");
      break;
    case GeneratorFamily::heavy_tail_q:
      if (tail_q <= 2.0) throw parameter_error("generator: heavy_tail_q needs q > 2");
      break;
    case GeneratorFamily::factor_model:
      if (loadings.size() != d)
        throw parameter_error("generator: factor loadings must have length d");
      if (loadings.cwiseAbs().minCoeff() <= 0.0)
        throw parameter_error("generator: zero factor loading");
      break;
    case GeneratorFamily::skewed_negative_third_moment:
      if (skewness == 0.0)
        throw parameter_error("generator: skewed family needs nonzero skewness sign");
      break;
    case GeneratorFamily::gaussian:
      break;
  }
}

double GeneratorSpec::population_variance() const {
  switch (family) {
    case GeneratorFamily::sub_exponential_iid:
    case GeneratorFamily::bounded_iid:
      return scale * scale;
    case GeneratorFamily::factor_model:
      return 1.0;  // idiosyncratic part only; column j has 1 + a_j^2
    default:
      return 1.0;
  }
}

double GeneratorSpec::population_third_moment() const {
  switch (family) {
    case GeneratorFamily::sub_exponential_iid:
      return 2.0 * scale * scale * scale;  // centered exponential
    case GeneratorFamily::skewed_negative_third_moment:
      return skewness < 0 ? -2.0 : 2.0;
    default:
      return 0.0;
  }
}

double GeneratorSpec::population_fourth_moment() const {
  switch (family) {
    case GeneratorFamily::sub_exponential_iid:
      return 9.0 * scale * scale * scale * scale;  // E(E-1)^4 = 9
    case GeneratorFamily::bounded_iid:
      return 1.8 * scale * scale * scale * scale;  // uniform: 9/5 sigma^4
    case GeneratorFamily::skewed_negative_third_moment:
      return 9.0;
    case GeneratorFamily::gaussian:
      return 3.0;
    case GeneratorFamily::heavy_tail_q: {
      const double a = tail_q + 2.0;
      const double ep2 = a / (a - 2.0);
      const double ep4 = a / (a - 4.0);
      return ep4 / (ep2 * ep2);
    }
    case GeneratorFamily::factor_model:
      throw parameter_error("population_fourth_moment: column-dependent for factor_model");
  }
  return 3.0;
}

Eigen::MatrixXd GeneratorSpec::population_covariance(Eigen::Index d) const {
  validate(d);
  if (family == GeneratorFamily::factor_model) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Identity(d, d);
    C += loadings * loadings.transpose();
    return C;
  }
  return population_variance() * Eigen::MatrixXd::Identity(d, d);
}

double GeneratorSpec::heavy_tail_dn(Eigen::Index d) const {
  if (family != GeneratorFamily::heavy_tail_q)
    throw parameter_error("heavy_tail_dn: generator is not heavy_tail_q");
  const double a = tail_q + 2.0;
  const double s = std::sqrt((a - 2.0) / a);  // unit-variance scaling
  // ||max_j |X_j|||_q <= (sum_j E|X_j|^q)^{1/q} = d^{1/q} s (a/(a-q))^{1/q}
  return std::pow(static_cast<double>(d), 1.0 / tail_q) * s *
         std::pow(a / (a - tail_q), 1.0 / tail_q);
}

namespace {

// Symmetrized Pareto with index a standardized to unit variance.
inline double heavy_tail_draw(RngStream& rng, double a, double s) {
  const double p = std::pow(rng.uniform(), -1.0 / a);  // Pareto(a) on [1, inf)
  return (rng.next_u64() & 1u ? s : -s) * p;
}

}  // namespace

void generate_into(const GeneratorSpec& spec, Eigen::MatrixXd& m, RngStream& rng) {
  const Eigen::Index n = m.rows(), d = m.cols();
  if (n < 3 || d < 3) throw parameter_error("generate: need n >= 3 and d >= 3");
  spec.validate(d);

  const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(d);
  switch (spec.family) {
    case GeneratorFamily::gaussian:
      rng.fill_normal({m.data(), total});
      break;
    case GeneratorFamily::sub_exponential_iid:
      rng.fill_exponential({m.data(), total});
      m.array() = spec.scale * (m.array() - 1.0);
      break;
    case GeneratorFamily::bounded_iid: {
      rng.fill_uniform({m.data(), total});
      const double w = spec.scale * std::sqrt(3.0);
      m.array() = w * (2.0 * m.array() - 1.0);
      break;
    }
    case GeneratorFamily::skewed_negative_third_moment:
      rng.fill_exponential({m.data(), total});
      if (spec.skewness < 0)
        m.array() = 1.0 - m.array();
      else
        m.array() = m.array() - 1.0;
      break;
    case GeneratorFamily::heavy_tail_q: {
      const double a = spec.tail_q + 2.0;
      const double s = std::sqrt((a - 2.0) / a);
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = heavy_tail_draw(rng, a, s);
      break;
    }
    case GeneratorFamily::factor_model: {
      rng.fill_normal({m.data(), total});
      Eigen::VectorXd f(n);
      rng.fill_normal({f.data(), static_cast<std::size_t>(n)});
      m.noalias() += f * spec.loadings.transpose();
      break;
    }
  }
}

SampleMatrix generate(const GeneratorSpec& spec, Eigen::Index n, Eigen::Index d,
                      RngStream& rng) {
  Eigen::MatrixXd m(n, d);
  generate_into(spec, m, rng);
  return SampleMatrix{std::move(m)};
}

Eigen::VectorXd normalized_sum(const SampleMatrix& X) {
  const Eigen::Index n = X.n(), d = X.d();
  Eigen::VectorXd out(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double sum = 0.0, comp = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double y = X.values(i, j) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    out(j) = sum;
  }
  return out / std::sqrt(static_cast<double>(n));
}

double CovarianceModel::sigma_min() const {
  return std::sqrt(matrix.diagonal().minCoeff());
}

CovarianceModel CovarianceModel::from_matrix(Eigen::MatrixXd C, double rel_tol) {
  if (C.rows() != C.cols()) throw parameter_error("covariance: matrix not square");
  Eigen::MatrixXd S = 0.5 * (C + C.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  if (es.info() != Eigen::Success)
    throw numerical_error("covariance: eigen decomposition failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double lam_max = std::max(ev.maxCoeff(), 0.0);
  const double floor = -rel_tol * std::max(lam_max, 1e-300);
  const double min_eig = ev.minCoeff();
  if (min_eig < floor)
    throw numerical_error("covariance: matrix indefinite, smallest eigenvalue " +
                          std::to_string(min_eig));
  Eigen::VectorXd lam = ev.cwiseMax(0.0);
  CovarianceModel model;
  model.matrix = std::move(S);
  model.root = es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
  model.rank = (lam.array() > 0.0).count();
  model.min_eigenvalue = min_eig;
  return model;
}

Eigen::MatrixXd gaussian_analog_sample(const CovarianceModel& C, Eigen::Index reps,
                                       RngStream& rng) {
  const Eigen::Index d = C.d();
  Eigen::MatrixXd G(reps, d);
  rng.fill_normal({G.data(), static_cast<std::size_t>(reps) * static_cast<std::size_t>(d)});
  return G * C.root.transpose();
}

CovarianceModel empirical_covariance(const SampleMatrix& X) {
  Eigen::MatrixXd C = (X.values.transpose() * X.values) / static_cast<double>(X.n());
  return CovarianceModel::from_matrix(std::move(C));
}

SampleMatrix diamond(const SampleMatrix& X) {
  Eigen::MatrixXd m(X.n(), 2 * X.d());
  m.leftCols(X.d()) = X.values;
  m.rightCols(X.d()) = -X.values;
  return SampleMatrix{std::move(m)};
}

Eigen::VectorXd diamond(const Eigen::VectorXd& v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v;
  out.tail(v.size()) = -v;
  return out;
}

}  // namespace hdclt
