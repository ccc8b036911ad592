#pragma once

//! Catalog of exponential families in canonical decomposition
//! p(x) = exp(<theta, t(x)> - F(theta) + k(x)) with respect to the counting
//! measure on {0,1,2,...} or the Lebesgue measure on an interval, together
//! with parameter conversions and the Kullback-Leibler / Bhattacharyya
//! formulas between members (same family, cross family, nested supports).
//!
//! Conventions fixed here:
//!  - exponential(lambda): t(x) = -x on (0,inf), theta = lambda,
//!    F(theta) = -log(theta);
//!  - laplacian(lambda): t(x) = -|x|, theta = lambda,
//!    F(theta) = -log(theta) + log 2 — so the two families share one
//!    generator pair and the exponential family is the x > 0 truncation;
//!  - normal, half_normal and trunc_normal all use the two-dimensional
//!    representation t(x) = (x, x^2) with window log-normalizers F_{a,b};
//!    half_normal(sigma) is the (0,inf) truncation at theta1 = 0, normal is
//!    the (-inf,inf) window.

#include <functional>
#include <map>
#include <string>

#include "duodiv/divergence.hpp"
#include "duodiv/generator.hpp"
#include "duodiv/interval.hpp"
#include "duodiv/oracle.hpp"

namespace duodiv {

enum class FamilyId { poisson, geometric, exponential, laplacian, half_normal, normal, trunc_normal };

enum class BaseMeasure { counting, lebesgue };

//! Source ("usual") parameters by name: lambda; p; lambda; lambda; sigma;
//! m,s; m,s,a,b.
using SourceParams = std::map<std::string, double>;

//! Canonical lowercase id used in diagnostics and CLI spec strings
//! (half_normal -> "halfnormal", trunc_normal -> "truncnormal").
std::string family_name(FamilyId id);

//! One density of one family, fully materialized: both parameterizations,
//! the support, the log-normalizer as a convex generator, and the canonical
//! decomposition hooks t(x), k(x). Immutable after construction.
struct ExpFamilyMember {
  FamilyId family;
  SourceParams source;
  Vector theta;  // natural parameter, in domain(log_normalizer)
  Support support;
  BaseMeasure base_measure;
  ConvexGenerator log_normalizer;
  std::function<Vector(double)> t;  // sufficient statistic
  std::function<double(double)> k;  // carrier term
  double log_normalizer_at_theta;   // cached F(theta)

  bool discrete() const { return base_measure == BaseMeasure::counting; }
};

// ---- factories (validate source parameters, throw ParamError) ---------------

ExpFamilyMember poisson(double lambda);
ExpFamilyMember geometric(double p);
ExpFamilyMember exponential(double lambda);
ExpFamilyMember laplacian(double lambda);
ExpFamilyMember half_normal(double sigma);
ExpFamilyMember normal(double m, double s);
ExpFamilyMember trunc_normal(double m, double s, double a, double b);

//! Factory by id + named parameters (exact key set required per family).
ExpFamilyMember make_member(FamilyId id, const SourceParams& source);

//! Same member at a different natural parameter. The truncation window (for
//! trunc_normal) is taken from `like`.
ExpFamilyMember member_at_natural(const ExpFamilyMember& like, const Vector& theta);

// ---- densities ----------------------------------------------------------------

//! exp(<theta, t(x)> - F(theta) + k(x)). Outside the support: returns 0, or
//! throws SupportError when strict is set.
double density(const ExpFamilyMember& member, double x, bool strict = false);

//! The exponent <theta, t(x)> - F(theta) + k(x) itself; -infinity outside the
//! support. Stays finite long after density() underflows, which the oracle
//! needs to tell far-tail underflow apart from a genuine support violation.
double log_density(const ExpFamilyMember& member, double x);

// ---- parameter conversions -----------------------------------------------------

//! Natural parameter from source parameters (ParamError on out-of-range).
Vector to_natural(FamilyId id, const SourceParams& source);

//! Moment parameter eta = grad F(theta) = E[t(x)].
Vector to_moment(const ExpFamilyMember& member);

//! Natural parameter from the moment parameter. The trunc_normal family
//! needs its window and requires the overload; the windowless call throws
//! ParamError for it. DomainError when eta lies outside the gradient range.
Vector from_moment(FamilyId id, const Vector& eta);
Vector from_moment(FamilyId id, const Vector& eta, Interval window);

//! Source parameters back from the natural parameter (window needed for
//! trunc_normal).
SourceParams to_source(FamilyId id, const Vector& theta);
SourceParams to_source(FamilyId id, const Vector& theta, Interval window);

// ---- divergences ----------------------------------------------------------------

//! KLD within one family (same id, same support):
//! D_KL[p : q] = B_F(theta_q : theta_p). Throws FamilyMismatchError.
DivergenceValue kl_same_family(const ExpFamilyMember& p, const ExpFamilyMember& q);

//! KLD between members of nested families sharing t(x), k(x) and base
//! measure, with support(p) contained in support(q): the tangent-gap form
//! F_q(theta_q) - F_p(theta_p) - <theta_q - theta_p, grad F_p(theta_p)> on
//! the (majorant, minorant) generator pair. The reverse direction returns
//! the +infinity sentinel; incomparable or statistic-incompatible inputs
//! throw NestingError.
DivergenceValue kl_nested(const ExpFamilyMember& p, const ExpFamilyMember& q);

//! General KLD dispatcher: same family -> kl_same_family; different base
//! measures -> UnsupportedPairError; support(p) not within support(q) ->
//! +infinity sentinel; families sharing statistics -> kl_nested; the
//! registered (poisson, geometric) pair -> its expectation formula with a
//! certified series term; anything else -> UnsupportedPairError.
DivergenceValue kl_cross_family(const ExpFamilyMember& p, const ExpFamilyMember& q);

//! Skewed Bhattacharyya distance -log integral p^alpha q^{1-alpha} in closed
//! form on natural parameters: the (duo) Jensen gap
//! alpha F_p(theta_p) + (1-alpha) F_q(theta_q) - F_narrow(mixture), available
//! when the two members are of one family or of nested families (either
//! order; the reversed order uses the swap identity with 1-alpha). Throws
//! UnsupportedPairError otherwise, AlphaError for alpha outside (0,1).
DivergenceValue bhattacharyya_closed(const ExpFamilyMember& p, const ExpFamilyMember& q,
                                     double alpha);

//! E_{Poisson(lambda)}[log x!], summed with a certified tail bound. Returns
//! the value; the certified tail is below 1e-13.
double poisson_expected_log_factorial(double lambda);

struct EntropyResult {
  double value;
  double abs_error_estimate;
};

//! (Differential) entropy in closed form: F(theta) - <theta, eta> - E[k(x)];
//! E[k] vanishes for every catalog family except poisson, where it is the
//! certified series above (its tail bound is the error estimate).
EntropyResult entropy_closed(const ExpFamilyMember& p);

// ---- oracle adapter --------------------------------------------------------------

//! View of the member for the numerical oracle: pointwise density, support,
//! a split hint at the density peak, and — for discrete members — the
//! successive-ratio bound and log-density growth coefficient the certified
//! series summation requires.
OracleDensity oracle_density(const ExpFamilyMember& member);

}  // namespace duodiv
