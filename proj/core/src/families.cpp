#include "duodiv/families.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "duodiv/errors.hpp"
#include "duodiv/truncnorm.hpp"

namespace duodiv {

namespace {

//! Families sharing one canonical decomposition (t, k, base measure), so that
//! members with nested supports form truncation pairs:
//!  - rate group: exponential, laplacian — t(x) = -|x|, k = 0 on the line;
//!  - quadratic group: half_normal, normal, trunc_normal — t(x) = (x, x^2).
enum class StatGroup { none, rate, quadratic };

StatGroup stat_group(FamilyId id) {
  switch (id) {
    case FamilyId::exponential:
    case FamilyId::laplacian:
      return StatGroup::rate;
    case FamilyId::half_normal:
    case FamilyId::normal:
    case FamilyId::trunc_normal:
      return StatGroup::quadratic;
    default:
      return StatGroup::none;
  }
}

double need(const SourceParams& src, const std::string& key, FamilyId id) {
  const auto it = src.find(key);
  if (it == src.end())
    throw ParamError(family_name(id) + ": missing parameter '" + key + "'");
  if (std::isnan(it->second))
    throw ParamError(family_name(id) + ": parameter '" + key + "' is NaN");
  return it->second;
}

void require_key_count(const SourceParams& src, std::size_t n, FamilyId id) {
  if (src.size() != n)
    throw ParamError(family_name(id) + ": expected exactly " + std::to_string(n) +
                     " named parameter(s)");
}

ExpFamilyMember build(FamilyId family, SourceParams source, Vector theta, Support support,
                      BaseMeasure bm, ConvexGenerator F, std::function<Vector(double)> t,
                      std::function<double(double)> k) {
  const double f_at = F.value(theta);
  return ExpFamilyMember{family,       std::move(source), std::move(theta), support, bm,
                         std::move(F), std::move(t),      std::move(k),     f_at};
}

Vector scalar_t(double x) { return Vector{x}; }
Vector neg_abs_t(double x) { return Vector{-std::fabs(x)}; }
Vector quadratic_t(double x) { return Vector{x, x * x}; }
double zero_k(double) { return 0.0; }
double neg_log_factorial_k(double x) { return -std::lgamma(x + 1.0); }

SeriesResult poisson_log_factorial_series(double lambda) {
  auto pmf = [lambda](long long k) {
    return std::exp(static_cast<double>(k) * std::log(lambda) - lambda -
                    std::lgamma(static_cast<double>(k) + 1.0));
  };
  auto g = [](long long k) { return std::lgamma(static_cast<double>(k) + 1.0); };
  auto ratio = [lambda](long long k) { return lambda / (static_cast<double>(k) + 1.0); };
  const SeriesResult s = sum_series(pmf, g, ratio, 1.0, OracleConfig{});
  if (!s.converged)
    throw ToleranceError("poisson_expected_log_factorial: series tail bound not reached", s.value,
                         s.abs_err);
  return s;
}

}  // namespace

std::string family_name(FamilyId id) {
  switch (id) {
    case FamilyId::poisson: return "poisson";
    case FamilyId::geometric: return "geometric";
    case FamilyId::exponential: return "exponential";
    case FamilyId::laplacian: return "laplacian";
    case FamilyId::half_normal: return "halfnormal";
    case FamilyId::normal: return "normal";
    case FamilyId::trunc_normal: return "truncnormal";
  }
  throw ParamError("family_name: unknown family id");
}

// ---- factories --------------------------------------------------------------

ExpFamilyMember poisson(double lambda) {
  Vector theta = to_natural(FamilyId::poisson, {{"lambda", lambda}});
  return build(FamilyId::poisson, {{"lambda", lambda}}, std::move(theta),
               Support::nonneg_integers(), BaseMeasure::counting, gen::exp_of(), scalar_t,
               neg_log_factorial_k);
}

ExpFamilyMember geometric(double p) {
  Vector theta = to_natural(FamilyId::geometric, {{"p", p}});
  return build(FamilyId::geometric, {{"p", p}}, std::move(theta), Support::nonneg_integers(),
               BaseMeasure::counting, gen::log_geometric(), scalar_t, zero_k);
}

ExpFamilyMember exponential(double lambda) {
  Vector theta = to_natural(FamilyId::exponential, {{"lambda", lambda}});
  return build(FamilyId::exponential, {{"lambda", lambda}}, std::move(theta),
               Support::positive_reals(), BaseMeasure::lebesgue,
               gen::neg_log(0.0, "exponential_log_normalizer"), neg_abs_t, zero_k);
}

ExpFamilyMember laplacian(double lambda) {
  Vector theta = to_natural(FamilyId::laplacian, {{"lambda", lambda}});
  return build(FamilyId::laplacian, {{"lambda", lambda}}, std::move(theta), Support::real_line(),
               BaseMeasure::lebesgue, gen::neg_log(std::log(2.0), "laplacian_log_normalizer"),
               neg_abs_t, zero_k);
}

ExpFamilyMember half_normal(double sigma) {
  Vector theta = to_natural(FamilyId::half_normal, {{"sigma", sigma}});
  return build(FamilyId::half_normal, {{"sigma", sigma}}, std::move(theta),
               Support::on(0.0, inf), BaseMeasure::lebesgue, trunc_log_normalizer(0.0, inf),
               quadratic_t, zero_k);
}

ExpFamilyMember normal(double m, double s) {
  Vector theta = to_natural(FamilyId::normal, {{"m", m}, {"s", s}});
  return build(FamilyId::normal, {{"m", m}, {"s", s}}, std::move(theta), Support::real_line(),
               BaseMeasure::lebesgue, trunc_log_normalizer(-inf, inf), quadratic_t, zero_k);
}

ExpFamilyMember trunc_normal(double m, double s, double a, double b) {
  SourceParams src{{"m", m}, {"s", s}, {"a", a}, {"b", b}};
  Vector theta = to_natural(FamilyId::trunc_normal, src);
  return build(FamilyId::trunc_normal, std::move(src), std::move(theta), Support::on(a, b),
               BaseMeasure::lebesgue, trunc_log_normalizer(a, b), quadratic_t, zero_k);
}

ExpFamilyMember make_member(FamilyId id, const SourceParams& source) {
  switch (id) {
    case FamilyId::poisson:
      require_key_count(source, 1, id);
      return poisson(need(source, "lambda", id));
    case FamilyId::geometric:
      require_key_count(source, 1, id);
      return geometric(need(source, "p", id));
    case FamilyId::exponential:
      require_key_count(source, 1, id);
      return exponential(need(source, "lambda", id));
    case FamilyId::laplacian:
      require_key_count(source, 1, id);
      return laplacian(need(source, "lambda", id));
    case FamilyId::half_normal:
      require_key_count(source, 1, id);
      return half_normal(need(source, "sigma", id));
    case FamilyId::normal:
      require_key_count(source, 2, id);
      return normal(need(source, "m", id), need(source, "s", id));
    case FamilyId::trunc_normal:
      require_key_count(source, 4, id);
      return trunc_normal(need(source, "m", id), need(source, "s", id), need(source, "a", id),
                          need(source, "b", id));
  }
  throw ParamError("make_member: unknown family id");
}

ExpFamilyMember member_at_natural(const ExpFamilyMember& like, const Vector& theta) {
  const SourceParams src = like.family == FamilyId::trunc_normal
                               ? to_source(like.family, theta, like.support.range)
                               : to_source(like.family, theta);
  return make_member(like.family, src);
}

// ---- densities -----------------------------------------------------------------

double density(const ExpFamilyMember& member, double x, bool strict) {
  if (!member.support.contains(x)) {
    if (strict)
      throw SupportError(family_name(member.family) + ": x = " + std::to_string(x) +
                         " outside the support");
    return 0.0;
  }
  const Vector tx = member.t(x);
  return std::exp(dot(member.theta, tx) - member.log_normalizer_at_theta + member.k(x));
}

double log_density(const ExpFamilyMember& member, double x) {
  if (!member.support.contains(x)) return -inf;
  const Vector tx = member.t(x);
  return dot(member.theta, tx) - member.log_normalizer_at_theta + member.k(x);
}

// ---- parameter conversions -------------------------------------------------------

Vector to_natural(FamilyId id, const SourceParams& source) {
  switch (id) {
    case FamilyId::poisson: {
      const double lambda = need(source, "lambda", id);
      if (!(lambda > 0.0)) throw ParamError("poisson: lambda must be positive");
      return Vector{std::log(lambda)};
    }
    case FamilyId::geometric: {
      const double p = need(source, "p", id);
      if (!(p > 0.0 && p < 1.0)) throw ParamError("geometric: p must lie in (0,1)");
      return Vector{std::log1p(-p)};
    }
    case FamilyId::exponential:
    case FamilyId::laplacian: {
      const double lambda = need(source, "lambda", id);
      if (!(lambda > 0.0)) throw ParamError(family_name(id) + ": lambda must be positive");
      return Vector{lambda};
    }
    case FamilyId::half_normal: {
      const double sigma = need(source, "sigma", id);
      if (!(sigma > 0.0)) throw ParamError("halfnormal: sigma must be positive");
      return Vector{0.0, -0.5 / (sigma * sigma)};
    }
    case FamilyId::normal:
    case FamilyId::trunc_normal: {
      const double m = need(source, "m", id);
      const double s = need(source, "s", id);
      const double a = id == FamilyId::trunc_normal ? need(source, "a", id) : -inf;
      const double b = id == FamilyId::trunc_normal ? need(source, "b", id) : inf;
      return TruncNormalParams(m, s, a, b).natural();
    }
  }
  throw ParamError("to_natural: unknown family id");
}

Vector to_moment(const ExpFamilyMember& member) {
  return member.log_normalizer.gradient(member.theta);
}

Vector from_moment(FamilyId id, const Vector& eta) {
  switch (id) {
    case FamilyId::poisson: {
      if (eta.size() != 1) throw ParamError("poisson: moment parameter must be 1-dimensional");
      if (!(eta[0] > 0.0)) throw DomainError("poisson: eta outside the gradient range (0,inf)");
      return Vector{std::log(eta[0])};
    }
    case FamilyId::geometric: {
      if (eta.size() != 1) throw ParamError("geometric: moment parameter must be 1-dimensional");
      if (!(eta[0] > 0.0)) throw DomainError("geometric: eta outside the gradient range (0,inf)");
      return Vector{std::log(eta[0]) - std::log1p(eta[0])};
    }
    case FamilyId::exponential:
    case FamilyId::laplacian: {
      if (eta.size() != 1)
        throw ParamError(family_name(id) + ": moment parameter must be 1-dimensional");
      if (!(eta[0] < 0.0))
        throw DomainError(family_name(id) + ": eta outside the gradient range (-inf,0)");
      return Vector{-1.0 / eta[0]};
    }
    case FamilyId::half_normal: {
      if (eta.size() != 2) throw ParamError("halfnormal: moment parameter must be 2-dimensional");
      if (!(eta[1] > 0.0)) throw DomainError("halfnormal: E[x^2] must be positive");
      const double sigma = std::sqrt(eta[1]);
      const double mean = sigma * std::sqrt(2.0 / std::numbers::pi);
      if (std::fabs(eta[0] - mean) > 1e-8 * (1.0 + sigma))
        throw DomainError("halfnormal: eta is not on the half-normal moment slice");
      return Vector{0.0, -0.5 / eta[1]};
    }
    case FamilyId::normal: {
      if (eta.size() != 2) throw ParamError("normal: moment parameter must be 2-dimensional");
      const double var = eta[1] - eta[0] * eta[0];
      if (!(var > 0.0)) throw DomainError("normal: eta requires E[x^2] > E[x]^2");
      return Vector{eta[0] / var, -0.5 / var};
    }
    case FamilyId::trunc_normal:
      throw ParamError("truncnormal: from_moment needs the truncation window (use the overload)");
  }
  throw ParamError("from_moment: unknown family id");
}

Vector from_moment(FamilyId id, const Vector& eta, Interval window) {
  if (id != FamilyId::trunc_normal) return from_moment(id, eta);
  if (eta.size() != 2) throw ParamError("truncnormal: moment parameter must be 2-dimensional");
  return trunc_normal_from_moment(window.lo, window.hi, eta).natural();
}

SourceParams to_source(FamilyId id, const Vector& theta) {
  switch (id) {
    case FamilyId::poisson:
      if (theta.size() != 1) throw ParamError("poisson: natural parameter must be 1-dimensional");
      return {{"lambda", std::exp(theta[0])}};
    case FamilyId::geometric: {
      if (theta.size() != 1)
        throw ParamError("geometric: natural parameter must be 1-dimensional");
      return {{"p", -std::expm1(theta[0])}};
    }
    case FamilyId::exponential:
    case FamilyId::laplacian:
      if (theta.size() != 1)
        throw ParamError(family_name(id) + ": natural parameter must be 1-dimensional");
      return {{"lambda", theta[0]}};
    case FamilyId::half_normal: {
      if (theta.size() != 2)
        throw ParamError("halfnormal: natural parameter must be 2-dimensional");
      if (!(theta[1] < 0.0)) throw ParamError("halfnormal: theta2 must be negative");
      if (std::fabs(theta[0]) > 1e-9 * std::max(1.0, std::fabs(theta[1])))
        throw ParamError("halfnormal: natural parameter is off the theta1 = 0 slice");
      return {{"sigma", std::sqrt(-0.5 / theta[1])}};
    }
    case FamilyId::normal: {
      if (theta.size() != 2) throw ParamError("normal: natural parameter must be 2-dimensional");
      if (!(theta[1] < 0.0)) throw ParamError("normal: theta2 must be negative");
      const double var = -0.5 / theta[1];
      return {{"m", theta[0] * var}, {"s", std::sqrt(var)}};
    }
    case FamilyId::trunc_normal:
      throw ParamError("truncnormal: to_source needs the truncation window (use the overload)");
  }
  throw ParamError("to_source: unknown family id");
}

SourceParams to_source(FamilyId id, const Vector& theta, Interval window) {
  if (id != FamilyId::trunc_normal) return to_source(id, theta);
  if (theta.size() != 2)
    throw ParamError("truncnormal: natural parameter must be 2-dimensional");
  if (!(theta[1] < 0.0)) throw ParamError("truncnormal: theta2 must be negative");
  const double var = -0.5 / theta[1];
  return {{"m", theta[0] * var}, {"s", std::sqrt(var)}, {"a", window.lo}, {"b", window.hi}};
}

// ---- divergences -----------------------------------------------------------------

DivergenceValue kl_same_family(const ExpFamilyMember& p, const ExpFamilyMember& q) {
  if (p.family != q.family || !(p.support == q.support))
    throw FamilyMismatchError("kl_same_family: members must share one family and support (got " +
                              family_name(p.family) + " vs " + family_name(q.family) + ")");
  return bregman(p.log_normalizer, q.theta, p.theta);
}

DivergenceValue kl_nested(const ExpFamilyMember& p, const ExpFamilyMember& q) {
  if (stat_group(p.family) == StatGroup::none || stat_group(p.family) != stat_group(q.family))
    throw NestingError("kl_nested: " + family_name(p.family) + " and " + family_name(q.family) +
                       " do not share a canonical decomposition");
  if (p.support.subset_of(q.support))
    return duo_bregman(q.log_normalizer, p.log_normalizer, q.theta, p.theta);
  if (q.support.subset_of(p.support)) return DivergenceValue::infinity(Method::closed_form);
  throw NestingError("kl_nested: supports overlap without nesting");
}

namespace {

//! Registered cross pair: Poisson p against geometric q over {0,1,...}. Both
//! use t(x) = x; the carrier difference k_p - k_q = -log x! is the certified
//! series term. The value is
//!   F_q(theta_q) + F_p*(eta_p) - <theta_q, E_p[t_q]> + E_p[k_p - k_q].
DivergenceValue kl_poisson_vs_geometric(const ExpFamilyMember& p, const ExpFamilyMember& q) {
  const Vector eta_p = p.log_normalizer.gradient(p.theta);
  const double conj_p = legendre_conjugate(p.log_normalizer, eta_p);
  const SeriesResult log_fact = poisson_log_factorial_series(p.source.at("lambda"));
  const double value = q.log_normalizer.value(q.theta) + conj_p - dot(q.theta, eta_p) -
                       log_fact.value;
  return DivergenceValue::nonnegative(value, Method::closed_form, log_fact.abs_err);
}

}  // namespace

DivergenceValue kl_cross_family(const ExpFamilyMember& p, const ExpFamilyMember& q) {
  if (p.family == q.family && p.support == q.support) return kl_same_family(p, q);
  if (p.base_measure != q.base_measure)
    throw UnsupportedPairError("kl_cross_family: members use different base measures");
  if (!p.support.subset_of(q.support)) return DivergenceValue::infinity(Method::closed_form);
  if (stat_group(p.family) != StatGroup::none && stat_group(p.family) == stat_group(q.family))
    return kl_nested(p, q);
  if (p.family == FamilyId::poisson && q.family == FamilyId::geometric)
    return kl_poisson_vs_geometric(p, q);
  throw UnsupportedPairError("kl_cross_family: no registered formula for " +
                             family_name(p.family) + " vs " + family_name(q.family));
}

DivergenceValue bhattacharyya_closed(const ExpFamilyMember& p, const ExpFamilyMember& q,
                                     double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw AlphaError("bhattacharyya_closed: alpha must lie in (0,1)");
  if (p.family == q.family && p.support == q.support)
    return jensen(p.log_normalizer, p.theta, q.theta, alpha);
  if (p.base_measure != q.base_measure)
    throw UnsupportedPairError("bhattacharyya_closed: members use different base measures");
  const bool same_group =
      stat_group(p.family) != StatGroup::none && stat_group(p.family) == stat_group(q.family);
  if (!same_group)
    throw UnsupportedPairError("bhattacharyya_closed: no natural-parameter formula for " +
                               family_name(p.family) + " vs " + family_name(q.family));
  // The affinity integral lives on the narrower support, so the mixture is
  // taken under the narrower (minorant) log-normalizer; the swapped order
  // uses the identity D_alpha[p:q] = D_{1-alpha}[q:p].
  if (p.support.subset_of(q.support))
    return duo_jensen(p.log_normalizer, q.log_normalizer, p.theta, q.theta, alpha);
  if (q.support.subset_of(p.support))
    return duo_jensen(q.log_normalizer, p.log_normalizer, q.theta, p.theta, 1.0 - alpha);
  throw UnsupportedPairError(
      "bhattacharyya_closed: supports overlap without nesting; use the oracle");
}

double poisson_expected_log_factorial(double lambda) {
  if (!(lambda > 0.0)) throw ParamError("poisson_expected_log_factorial: lambda must be positive");
  return poisson_log_factorial_series(lambda).value;
}

EntropyResult entropy_closed(const ExpFamilyMember& p) {
  const Vector eta = p.log_normalizer.gradient(p.theta);
  const double base = p.log_normalizer_at_theta - dot(p.theta, eta);
  if (p.family == FamilyId::poisson) {
    const SeriesResult s = poisson_log_factorial_series(p.source.at("lambda"));
    return EntropyResult{base + s.value, s.abs_err};
  }
  return EntropyResult{base, 0.0};
}

// ---- oracle adapter -----------------------------------------------------------------

OracleDensity oracle_density(const ExpFamilyMember& member) {
  OracleDensity d;
  d.support = member.support;
  d.pdf = [member](double x) { return density(member, x); };
  d.log_pdf = [member](double x) { return log_density(member, x); };
  switch (member.family) {
    case FamilyId::poisson: {
      const double lambda = member.source.at("lambda");
      d.ratio_bound = [lambda](long long k) { return lambda / (static_cast<double>(k) + 1.0); };
      d.log_growth_coeff = std::fabs(std::log(lambda)) + lambda + 1.0;
      break;
    }
    case FamilyId::geometric: {
      const double p = member.source.at("p");
      d.ratio_bound = [p](long long) { return 1.0 - p; };
      d.log_growth_coeff = std::fabs(std::log1p(-p)) + std::fabs(std::log(p)) + 1.0;
      break;
    }
    case FamilyId::normal:
    case FamilyId::trunc_normal:
      d.split_hint = member.source.at("m");
      break;
    case FamilyId::laplacian:
    case FamilyId::exponential:
    case FamilyId::half_normal:
      d.split_hint = 0.0;
      break;
  }
  return d;
}

}  // namespace duodiv
