#pragma once

#include <Eigen/Core>
#include <string>

#include "hdclt/rng.hpp"

namespace hdclt {

/// n x d observation matrix; rows are independent observations X_i, columns
/// are (possibly dependent) coordinates. Requires n >= 3, d >= 3.
struct SampleMatrix {
  Eigen::MatrixXd values;

  Eigen::Index n() const { return values.rows(); }
  Eigen::Index d() const { return values.cols(); }

  static SampleMatrix from(Eigen::MatrixXd m);
};

enum class GeneratorFamily {
  sub_exponential_iid,
  bounded_iid,
  heavy_tail_q,
  factor_model,
  skewed_negative_third_moment,
  gaussian,
};

GeneratorFamily generator_family_from_string(const std::string& s);
std::string to_string(GeneratorFamily f);

/// Data-generating law for the columns. All families produce exactly centered
/// columns (analytic mean subtracted) with the advertised moments.
struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::gaussian;
  double scale = 1.0;        // sub_exponential_iid / bounded_iid column sd
  double tail_q = 4.0;       // heavy_tail_q: highest finite max-moment order
  double skewness = -2.0;    // skewed family: -2 is 1-Exp(1), +2 is Exp(1)-1
  Eigen::VectorXd loadings;  // factor_model loadings a

  void validate(Eigen::Index d) const;

  double population_variance() const;
  double population_third_moment() const;
  double population_fourth_moment() const;
  /// Covariance of a single row (d x d).
  Eigen::MatrixXd population_covariance(Eigen::Index d) const;
  /// Plug-in D_n = || max_j |X_j| ||_q bound for the heavy-tail family.
  double heavy_tail_dn(Eigen::Index d) const;
};

/// Symmetric PSD covariance with a precomputed factor root (C = root root^T).
/// Eigenvalues in [-tol*lambda_max, 0) are clamped to zero; anything more
/// negative is rejected.
struct CovarianceModel {
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd root;
  Eigen::Index rank = 0;
  double min_eigenvalue = 0.0;

  Eigen::Index d() const { return matrix.rows(); }
  double sigma_min() const;  // min_j sqrt(C_jj)

  static CovarianceModel from_matrix(Eigen::MatrixXd C, double rel_tol = 1e-10);
};

/// Draw an n x d sample from the generator law.
SampleMatrix generate(const GeneratorSpec& spec, Eigen::Index n, Eigen::Index d,
                      RngStream& rng);

/// Same, into a preallocated buffer (hot loops that redraw every replication).
void generate_into(const GeneratorSpec& spec, Eigen::MatrixXd& m, RngStream& rng);

/// n^{-1/2} sum of rows, compensated (Kahan) summation per column.
Eigen::VectorXd normalized_sum(const SampleMatrix& X);

/// reps x d matrix of iid N(0, C) rows.
Eigen::MatrixXd gaussian_analog_sample(const CovarianceModel& C, Eigen::Index reps,
                                       RngStream& rng);

/// (1/n) X^T X; rows are centered in law, so no mean re-subtraction.
CovarianceModel empirical_covariance(const SampleMatrix& X);

/// Stack (X, -X) columnwise: column j+d is the negation of column j.
SampleMatrix diamond(const SampleMatrix& X);

/// Vector-level diamond: (v, -v) in R^{2d}.
Eigen::VectorXd diamond(const Eigen::VectorXd& v);

}  // namespace hdclt
