#pragma once

namespace hdclt {

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal CDF.
double norm_cdf(double x);

/// Upper tail P(Z > x), accurate for large x.
double norm_sf(double x);

/// log of the standard normal CDF, stable in both tails.
double norm_logcdf(double x);

/// Inverse standard normal CDF (Wichura's AS241, ~1e-15 relative accuracy).
/// Argument must be in (0, 1).
double norm_ppf(double p);

/// Solution x of Phi(x) = 1 - q for small complementary probability q;
/// avoids the catastrophic cancellation of norm_ppf(1 - q).
double norm_isf(double q);

}  // namespace hdclt
