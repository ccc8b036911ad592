#pragma once

//! Truncated normal machinery: error function, normal CDF differences that
//! stay accurate in the far tails, the truncation-window partition function
//! and moments, the two-parameter log-normalizer as a convex generator, and
//! the divergences/entropy built on them. Infinite window endpoints are
//! first-class; the conventions pdf(+/-inf) = 0 and (+/-inf)*pdf(+/-inf) = 0
//! are hard-coded where the formulas need them.

#include "duodiv/divergence.hpp"
#include "duodiv/generator.hpp"

namespace duodiv {

//! Error function via rational approximations on |x| <= 0.46875,
//! (0.46875, 4], and (4, inf); relative error well under 1e-13 everywhere.
double erf(double x);
//! Complementary error function, accurate (relatively) for large positive x.
double erfc(double x);

//! Standard normal density; 0 at +/-infinity.
double norm_pdf(double z);
//! Standard normal CDF Phi(z) = erfc(-z/sqrt 2)/2.
double norm_cdf(double z);
//! Phi(zhi) - Phi(zlo) without cancellation: complementary-function form when
//! both bounds lie on the same side of 0, a sum of positive erf terms when
//! they straddle it.
double norm_cdf_diff(double zlo, double zhi);

struct TruncNormalParams {
  double m;  // source location
  double s;  // source scale, > 0
  double a;  // lower truncation bound, -inf allowed
  double b;  // upper truncation bound, +inf allowed, a < b

  TruncNormalParams(double m, double s, double a, double b);

  double alpha() const { return (a - m) / s; }  // standardized bounds
  double beta() const { return (b - m) / s; }
  bool window_subset_of(const TruncNormalParams& o) const { return a >= o.a && b <= o.b; }
  //! Natural parameters (m/s^2, -1/(2 s^2)) of the (x, x^2) coordinates.
  Vector natural() const;
};

//! Window mass of the standardized bounds, Phi(beta) - Phi(alpha). Throws
//! DegenerateError when it underflows to zero.
double window_mass(const TruncNormalParams& p);

//! Partition function integral_a^b exp(-(x-m)^2 / (2 s^2)) dx
//!   = sqrt(2 pi) s (Phi(beta) - Phi(alpha)).
double partition(const TruncNormalParams& p);

struct TruncMoments {
  double mean;
  double var;
};

//! Mean and variance of the truncated distribution.
TruncMoments trunc_moments(const TruncNormalParams& p);

//! Moment parameters eta = (E[x], E[x^2]) = (mean, var + mean^2).
Vector trunc_moment_params(const TruncNormalParams& p);

//! Density at x (0 outside the open window).
double trunc_normal_pdf(const TruncNormalParams& p, double x);

//! The log-normalizer F_{a,b}(theta) = -theta1^2/(4 theta2) + log Z_{a,b} of
//! the family truncated to (a,b), as a convex generator on
//! R x (-inf, 0) in the natural coordinates theta = (m/s^2, -1/(2 s^2)).
//! Its gradient is trunc_moment_params; conjugation is numeric, seeded by
//! moment-matching the untruncated normal.
ConvexGenerator trunc_log_normalizer(double a, double b);

//! Invert eta = (E[x], E[x^2]) back to source parameters for a fixed window.
TruncNormalParams trunc_normal_from_moment(double a, double b, const Vector& eta);

//! KLD between truncated normals with nested windows, evaluated through the
//! duo Bregman form F2(theta2) - F1(theta1) - <theta2 - theta1, eta1> on the
//! two-parameter log-normalizers. Returns the +infinity sentinel when
//! [a1,b1] is not contained in [a2,b2].
DivergenceValue kl_trunc_normal(const TruncNormalParams& p1, const TruncNormalParams& p2);

//! Differential entropy
//!   log(sqrt(2 pi e) s (Phi(beta)-Phi(alpha)))
//!     + (alpha pdf(alpha) - beta pdf(beta)) / (2 (Phi(beta)-Phi(alpha))).
double trunc_entropy(const TruncNormalParams& p);

}  // namespace duodiv
