#pragma once

//! Numerical oracle: computes divergences, expectations and entropies
//! directly from pointwise density evaluations, by adaptive Gauss-Kronrod
//! quadrature (continuous) and series summation with certified tail bounds
//! (discrete). It shares no closed forms with the analytic modules, so its
//! values are an independent check on theirs. Every result carries an honest
//! absolute error estimate.

#include <functional>

#include "duodiv/divergence.hpp"
#include "duodiv/interval.hpp"
#include "duodiv/linalg.hpp"

namespace duodiv {

struct OracleConfig {
  double abs_tol = 1e-10;        // quadrature absolute target
  double rel_tol = 1e-10;        // quadrature relative target
  int max_subdivisions = 2000;   // adaptive interval budget
  double series_tail_tol = 1e-14;  // certified series tail bound target
  double fd_step = 1e-6;         // finite-difference base step
};

//! A density as the oracle sees it: support plus pointwise evaluation.
//! For discrete densities two certification hooks accompany the pmf:
//!   ratio_bound(k): nonincreasing upper bound on pmf(k+1)/pmf(k), valid for
//!     every index >= k (e.g. lambda/(k+1) for a rate-lambda count density);
//!   log_growth_coeff: C such that |log pmf(k)| <= C * (1 + k log(k+2)) for
//!     k >= 2, used to envelope log-ratio summands.
struct OracleDensity {
  Support support;
  std::function<double(double)> pdf;
  //! Optional log pdf/pmf, -infinity outside the support. When both operands
  //! of a ratio integrand provide it, log-ratios are formed directly, so a
  //! far-tail density underflow is not mistaken for a support violation.
  std::function<double(double)> log_pdf;
  double split_hint = 0.0;  // continuous, doubly-infinite support: peak location
  std::function<double(long long)> ratio_bound;
  double log_growth_coeff = 1.0;
};

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

//! Adaptive 7-15 Gauss-Kronrod on a finite interval. Endpoints are never
//! evaluated (all Kronrod nodes are interior), so integrable endpoint
//! behavior is handled by subdivision. Deterministic: intervals are refined
//! worst-first and accumulated pairwise in left-endpoint order.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              const OracleConfig& cfg = {});

//! Integral over a possibly unbounded interval. Half-lines are mapped to
//! (0,1) by x = c + t/(1-t); the whole line is split at `split` first and
//! each half mapped the same way.
QuadResult integrate_interval(const std::function<double(double)>& f, Interval range,
                              double split = 0.0, const OracleConfig& cfg = {});

struct SeriesResult {
  double value = 0.0;
  double abs_err = 0.0;
  long long terms = 0;
  bool converged = false;
};

//! sum_{k>=0} p(k) g(k) where |g(k)| <= growth_coeff * (1 + k log(k+2)) and
//! ratio_bound certifies the decay of p. Summation stops once the geometric
//! envelope bound on the tail drops below cfg.series_tail_tol.
SeriesResult sum_series(const std::function<double(long long)>& p,
                        const std::function<double(long long)>& g,
                        const std::function<double(long long)>& ratio_bound, double growth_coeff,
                        const OracleConfig& cfg = {});

//! Kullback-Leibler divergence from pointwise densities. Returns the
//! +infinity sentinel when q vanishes somewhere p does not (detected both
//! from the support descriptors and during evaluation). Throws
//! ToleranceError (carrying the value and honest estimate) when the
//! subdivision budget cannot certify abs_tol.
DivergenceValue kl_numeric(const OracleDensity& p, const OracleDensity& q,
                           const OracleConfig& cfg = {});

//! Skew Bhattacharyya distance -log integral p^alpha q^(1-alpha), alpha in (0,1).
DivergenceValue bhattacharyya_numeric(const OracleDensity& p, const OracleDensity& q, double alpha,
                                      const OracleConfig& cfg = {});

//! E_p[g]. For discrete p, growth_coeff must envelope |g| as in sum_series.
double expectation_numeric(const OracleDensity& p, const std::function<double(double)>& g,
                           const OracleConfig& cfg = {}, double growth_coeff = 1.0);

//! -E_p[log p] (differential or Shannon).
double entropy_numeric(const OracleDensity& p, const OracleConfig& cfg = {});

//! Total mass of the density (a self-test; should be 1).
double normalization_numeric(const OracleDensity& p, const OracleConfig& cfg = {});

struct FdGrad {
  Vector grad;     // Richardson-extrapolated central differences
  Vector abs_err;  // per-coordinate estimate from the two levels
};

//! Gradient by central differences at steps h and h/2 with one Richardson
//! extrapolation, h = fd_step * max(1, |theta_i|). If a domain is given,
//! theta must sit at least 2h inside it (DomainError otherwise).
FdGrad finite_diff_grad(const std::function<double(const Vector&)>& f, const Vector& theta,
                        const OracleConfig& cfg = {}, const Box* domain = nullptr);

}  // namespace duodiv
