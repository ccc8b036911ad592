#include "duodiv/truncnorm.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace duodiv {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt2Pi = 2.5066282746310005024;  // sqrt(2 pi)
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

std::string window_name(double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "trunc_normal_F(%g,%g)", a, b);
  return buf;
}

}  // namespace

double norm_pdf(double z) {
  if (std::isinf(z)) return 0.0;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double norm_cdf(double z) {
  if (z == -inf) return 0.0;
  if (z == inf) return 1.0;
  return 0.5 * erfc(-z / kSqrt2);
}

double norm_cdf_diff(double zlo, double zhi) {
  if (!(zlo < zhi)) return 0.0;
  if (zlo >= 0.0)  // right tail: difference of small complementary values
    return 0.5 * (erfc(zlo / kSqrt2) - erfc(zhi / kSqrt2));
  if (zhi <= 0.0)  // left tail, mirrored
    return 0.5 * (erfc(-zhi / kSqrt2) - erfc(-zlo / kSqrt2));
  // Straddles zero: both terms positive, no cancellation.
  return 0.5 * (erf(zhi / kSqrt2) + erf(-zlo / kSqrt2));
}

TruncNormalParams::TruncNormalParams(double m, double s, double a, double b)
    : m(m), s(s), a(a), b(b) {
  if (!std::isfinite(m)) throw ParamError("trunc normal: location must be finite");
  if (!(s > 0.0) || !std::isfinite(s)) throw ParamError("trunc normal: scale must be positive");
  if (!(a < b)) throw ParamError("trunc normal: window requires a < b");
  if (std::isnan(a) || std::isnan(b)) throw ParamError("trunc normal: window bounds NaN");
}

Vector TruncNormalParams::natural() const {
  const double s2 = s * s;
  return Vector{m / s2, -0.5 / s2};
}

double window_mass(const TruncNormalParams& p) {
  const double zd = norm_cdf_diff(p.alpha(), p.beta());
  if (!(zd > 0.0))
    throw DegenerateError("trunc normal: window mass underflows to zero");
  return zd;
}

double partition(const TruncNormalParams& p) { return kSqrt2Pi * p.s * window_mass(p); }

TruncMoments trunc_moments(const TruncNormalParams& p) {
  const double zd = window_mass(p);
  const double al = p.alpha(), be = p.beta();
  // Conventions at infinite bounds: pdf = 0 and z*pdf = 0.
  const double pa = norm_pdf(al);
  const double pb = norm_pdf(be);
  const double apa = std::isinf(al) ? 0.0 : al * pa;
  const double bpb = std::isinf(be) ? 0.0 : be * pb;

  const double r = (pb - pa) / zd;
  const double mean = p.m - p.s * r;
  const double var = p.s * p.s * (1.0 - (bpb - apa) / zd - r * r);
  if (!(var > 0.0))
    throw DegenerateError("trunc normal: window so extreme the variance underflows");
  return TruncMoments{mean, var};
}

Vector trunc_moment_params(const TruncNormalParams& p) {
  const TruncMoments mo = trunc_moments(p);
  return Vector{mo.mean, mo.var + mo.mean * mo.mean};
}

double trunc_normal_pdf(const TruncNormalParams& p, double x) {
  if (!(x > p.a && x < p.b)) return 0.0;
  const double z = (x - p.m) / p.s;
  return std::exp(-0.5 * z * z) / partition(p);
}

namespace {

TruncNormalParams params_from_natural(double a, double b, const Vector& theta) {
  const double s2 = -0.5 / theta[1];
  return TruncNormalParams(theta[0] * s2, std::sqrt(s2), a, b);
}

// F_{a,b}(theta) = m^2/(2 s^2) + (1/2) log(2 pi s^2) + log(Phi(beta)-Phi(alpha))
double log_normalizer_value(double a, double b, const Vector& theta) {
  const TruncNormalParams p = params_from_natural(a, b, theta);
  const double s2 = p.s * p.s;
  return 0.5 * p.m * p.m / s2 + 0.5 * std::log(2.0 * std::numbers::pi * s2) +
         std::log(window_mass(p));
}

}  // namespace

ConvexGenerator trunc_log_normalizer(double a, double b) {
  if (!(a < b)) throw ParamError("trunc normal: window requires a < b");
  ConvexGenerator F(
      window_name(a, b), Box{Interval{-inf, inf}, Interval{-inf, 0.0}},
      [a, b](const Vector& theta) { return log_normalizer_value(a, b, theta); },
      [a, b](const Vector& theta) { return trunc_moment_params(params_from_natural(a, b, theta)); });
  // Numeric conjugation seed: moment-match the untruncated normal. Also a
  // feasibility gate: the window constrains which eta are reachable at all.
  F.with_conjugate_seed([a, b](const Vector& eta) {
    const double mean = eta[0];
    const double var = eta[1] - eta[0] * eta[0];
    if (!(var > 0.0))
      throw DomainError("trunc normal: eta outside gradient range (E[x^2] <= E[x]^2)");
    if (!(mean > a && mean < b))
      throw DomainError("trunc normal: eta outside gradient range (mean outside window)");
    if (std::isfinite(a) && std::isfinite(b) && var >= 0.25 * (b - a) * (b - a))
      throw DomainError("trunc normal: eta outside gradient range (variance exceeds window cap)");
    return Vector{mean / var, -0.5 / var};
  });
  return F;
}

TruncNormalParams trunc_normal_from_moment(double a, double b, const Vector& eta) {
  const ConvexGenerator F = trunc_log_normalizer(a, b);
  const Vector theta = grad_conjugate(F, eta);
  return params_from_natural(a, b, theta);
}

DivergenceValue kl_trunc_normal(const TruncNormalParams& p1, const TruncNormalParams& p2) {
  if (!p1.window_subset_of(p2)) return DivergenceValue::infinity(Method::closed_form);
  const Vector theta1 = p1.natural();
  const Vector theta2 = p2.natural();
  const Vector eta1 = trunc_moment_params(p1);
  const double v = log_normalizer_value(p2.a, p2.b, theta2) -
                   log_normalizer_value(p1.a, p1.b, theta1) - dot(sub(theta2, theta1), eta1);
  return DivergenceValue::nonnegative(v, Method::closed_form);
}

double trunc_entropy(const TruncNormalParams& p) {
  const double zd = window_mass(p);
  const double al = p.alpha(), be = p.beta();
  const double apa = std::isinf(al) ? 0.0 : al * norm_pdf(al);
  const double bpb = std::isinf(be) ? 0.0 : be * norm_pdf(be);
  // log(sqrt(2 pi e) s zd) + (alpha pdf(alpha) - beta pdf(beta)) / (2 zd)
  return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e) + std::log(p.s) +
         std::log(zd) + (apa - bpb) / (2.0 * zd);
}

}  // namespace duodiv
