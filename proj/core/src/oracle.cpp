#include "duodiv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "duodiv/errors.hpp"

namespace duodiv {

namespace {

// ---- 7-15 Gauss-Kronrod rule ---------------------------------------------
// Standard abscissae/weights; error estimate scaled QUADPACK-style so it is
// sharp for smooth integrands yet conservative near singularities.

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi;
  double value;
  double err;
};

Segment kronrod15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  double fv1[7], fv2[7];
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    fv1[jtw] = f(center - absc);
    fv2[jtw] = f(center + absc);
    const double fsum = fv1[jtw] + fv2[jtw];
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::fabs(fv1[jtw]) + std::fabs(fv2[jtw]));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    fv1[jtwm1] = f(center - absc);
    fv2[jtwm1] = f(center + absc);
    const double fsum = fv1[jtwm1] + fv2[jtwm1];
    resk += kWgk[jtwm1] * fsum;
    resabs += kWgk[jtwm1] * (std::fabs(fv1[jtwm1]) + std::fabs(fv2[jtwm1]));
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

  const double value = resk * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
  return Segment{lo, hi, value, err};
}

double pairwise_sum(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return xs[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              const OracleConfig& cfg) {
  std::vector<Segment> segs;
  segs.reserve(64);
  const double mid = 0.5 * (lo + hi);
  segs.push_back(kronrod15(f, lo, mid));
  segs.push_back(kronrod15(f, mid, hi));

  auto totals = [&segs] {
    double v = 0.0, e = 0.0;
    for (const Segment& s : segs) {
      v += s.value;
      e += s.err;
    }
    return std::pair{v, e};
  };

  auto [total_v, total_e] = totals();
  while (static_cast<int>(segs.size()) < cfg.max_subdivisions) {
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total_v));
    if (total_e <= target) break;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].err > segs[worst].err) worst = i;
    const Segment s = segs[worst];
    const double m = 0.5 * (s.lo + s.hi);
    if (m <= s.lo || m >= s.hi) break;  // cannot split further at roundoff
    segs[worst] = kronrod15(f, s.lo, m);
    segs.push_back(kronrod15(f, m, s.hi));
    std::tie(total_v, total_e) = totals();
  }

  // Deterministic accumulation: left-endpoint order, pairwise sums.
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  std::vector<double> vals, errs;
  vals.reserve(segs.size());
  errs.reserve(segs.size());
  for (const Segment& s : segs) {
    vals.push_back(s.value);
    errs.push_back(s.err);
  }
  QuadResult r;
  r.value = pairwise_sum(vals, 0, vals.size());
  r.abs_err = pairwise_sum(errs, 0, errs.size());
  r.subdivisions = static_cast<int>(segs.size());
  r.converged = r.abs_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value));
  return r;
}

QuadResult integrate_interval(const std::function<double(double)>& f, Interval range, double split,
                              const OracleConfig& cfg) {
  const bool lo_fin = std::isfinite(range.lo);
  const bool hi_fin = std::isfinite(range.hi);

  if (lo_fin && hi_fin) return integrate_adaptive(f, range.lo, range.hi, cfg);

  // Map [c, inf) to t in (0,1) via x = c + t/(1-t); the Jacobian factor is
  // applied only when f(x) is nonzero so that underflowed tails stay 0.
  auto upper_half = [&](double c) {
    return [&f, c](double t) {
      const double om = 1.0 - t;
      const double x = c + t / om;
      const double fx = f(x);
      return fx == 0.0 ? 0.0 : fx / (om * om);
    };
  };
  auto lower_half = [&](double c) {
    return [&f, c](double t) {
      const double om = 1.0 - t;
      const double x = c - t / om;
      const double fx = f(x);
      return fx == 0.0 ? 0.0 : fx / (om * om);
    };
  };

  OracleConfig half_cfg = cfg;
  if (!lo_fin && !hi_fin) {
    half_cfg.abs_tol = 0.5 * cfg.abs_tol;
    half_cfg.max_subdivisions = cfg.max_subdivisions / 2;
    const QuadResult left = integrate_adaptive(lower_half(split), 0.0, 1.0, half_cfg);
    const QuadResult right = integrate_adaptive(upper_half(split), 0.0, 1.0, half_cfg);
    QuadResult r;
    r.value = left.value + right.value;
    r.abs_err = left.abs_err + right.abs_err;
    r.subdivisions = left.subdivisions + right.subdivisions;
    r.converged = left.converged && right.converged;
    return r;
  }
  if (!hi_fin) return integrate_adaptive(upper_half(range.lo), 0.0, 1.0, cfg);
  return integrate_adaptive(lower_half(range.hi), 0.0, 1.0, cfg);
}

// ---- certified series ------------------------------------------------------

namespace {

constexpr long long kSeriesMin = 8;
constexpr long long kSeriesMax = 2000000;

double growth_envelope(long long k) {
  return 1.0 + static_cast<double>(k) * std::log(static_cast<double>(k) + 2.0);
}

}  // namespace

SeriesResult sum_series(const std::function<double(long long)>& p,
                        const std::function<double(long long)>& g,
                        const std::function<double(long long)>& ratio_bound, double growth_coeff,
                        const OracleConfig& cfg) {
  SeriesResult r;
  double sum = 0.0, comp = 0.0, sum_abs = 0.0;  // Kahan compensated
  for (long long k = 0; k <= kSeriesMax; ++k) {
    const double pk = p(k);
    const double tk = pk * g(k);
    const double y = tk - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    sum_abs += std::fabs(tk);
    r.terms = k + 1;

    if (k >= kSeriesMin) {
      const double rb = ratio_bound(k);
      const double rho = rb * (1.0 + 1.5 / static_cast<double>(k));
      if (rho < 1.0) {
        // Tail: sum_{j>k} pmf(j)|g(j)| <= C pmf(k) G(k) rho/(1-rho), using
        // pmf(k+i) <= pmf(k) rb^i and G(k+i) <= G(k) (1+1.5/k)^i.
        const double tail = growth_coeff * pk * growth_envelope(k) * rho / (1.0 - rho);
        if (tail < cfg.series_tail_tol) {
          r.value = sum;
          r.abs_err = tail + 8.0 * std::numeric_limits<double>::epsilon() * sum_abs;
          r.converged = true;
          return r;
        }
      }
    }
  }
  r.value = sum;
  r.abs_err = std::fabs(sum) + 1.0;  // no certificate obtained
  r.converged = false;
  return r;
}

namespace {

// Positive series with a ratio bound on the terms themselves:
// t(k+i) <= t(k) * rho^i with rho = term_ratio(k) nonincreasing.
SeriesResult sum_positive_series(const std::function<double(long long)>& term,
                                 const std::function<double(long long)>& term_ratio,
                                 const OracleConfig& cfg) {
  SeriesResult r;
  double sum = 0.0, comp = 0.0;
  for (long long k = 0; k <= kSeriesMax; ++k) {
    const double tk = term(k);
    const double y = tk - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    r.terms = k + 1;

    if (k >= kSeriesMin) {
      const double rho = term_ratio(k);
      if (rho < 1.0) {
        const double tail = tk * rho / (1.0 - rho);
        if (tail < cfg.series_tail_tol) {
          r.value = sum;
          r.abs_err = tail + 8.0 * std::numeric_limits<double>::epsilon() * sum;
          r.converged = true;
          return r;
        }
      }
    }
  }
  r.value = sum;
  r.abs_err = std::fabs(sum) + 1.0;
  r.converged = false;
  return r;
}

void require_discrete_hooks(const OracleDensity& d, const char* who) {
  if (!d.ratio_bound)
    throw Error(std::string(who) + ": discrete density lacks a ratio_bound certificate");
}

[[noreturn]] void throw_tolerance(const char* who, double value, double err) {
  throw ToleranceError(std::string(who) + ": error estimate " + std::to_string(err) +
                           " did not reach the requested tolerance",
                       value, err);
}

}  // namespace

DivergenceValue kl_numeric(const OracleDensity& p, const OracleDensity& q,
                           const OracleConfig& cfg) {
  if (p.support.discrete() != q.support.discrete())
    throw Error("kl_numeric: densities live on different base measures");

  const bool have_logs = p.log_pdf && q.log_pdf;

  if (p.support.discrete()) {
    require_discrete_hooks(p, "kl_numeric");
    bool inf_flag = false;
    auto g = [&](long long k) {
      const double x = static_cast<double>(k);
      const double pk = p.pdf(x);
      if (pk <= 0.0) return 0.0;
      if (have_logs) {
        const double lq = q.log_pdf(x);
        if (!std::isfinite(lq)) {
          inf_flag = true;
          return 0.0;
        }
        return p.log_pdf(x) - lq;
      }
      const double qk = q.pdf(x);
      if (qk <= 0.0) {
        inf_flag = true;
        return 0.0;
      }
      return std::log(pk) - std::log(qk);
    };
    const SeriesResult s =
        sum_series([&](long long k) { return p.pdf(static_cast<double>(k)); }, g, p.ratio_bound,
                   p.log_growth_coeff + q.log_growth_coeff, cfg);
    if (inf_flag) return DivergenceValue::infinity(Method::oracle);
    if (!s.converged) throw_tolerance("kl_numeric", s.value, s.abs_err);
    return DivergenceValue::nonnegative(s.value, Method::oracle, s.abs_err);
  }

  if (!p.support.range.subset_of(q.support.range)) return DivergenceValue::infinity(Method::oracle);

  bool inf_flag = false;
  auto f = [&](double x) {
    const double px = p.pdf(x);
    if (px <= 0.0) return 0.0;  // 0 log 0 = 0
    if (have_logs) {
      const double lq = q.log_pdf(x);
      if (!std::isfinite(lq)) {
        inf_flag = true;
        return 0.0;
      }
      return px * (p.log_pdf(x) - lq);
    }
    const double qx = q.pdf(x);
    if (qx <= 0.0) {
      inf_flag = true;
      return 0.0;
    }
    return px * std::log(px / qx);
  };
  double split = p.split_hint;
  if (!(split > p.support.range.lo && split < p.support.range.hi))
    split = p.support.range.anchor();
  const QuadResult qr = integrate_interval(f, p.support.range, split, cfg);
  if (inf_flag) return DivergenceValue::infinity(Method::oracle);
  if (!qr.converged) throw_tolerance("kl_numeric", qr.value, qr.abs_err);
  return DivergenceValue::nonnegative(qr.value, Method::oracle, qr.abs_err);
}

DivergenceValue bhattacharyya_numeric(const OracleDensity& p, const OracleDensity& q, double alpha,
                                      const OracleConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw AlphaError("bhattacharyya_numeric: alpha must lie in (0,1)");
  if (p.support.discrete() != q.support.discrete())
    throw Error("bhattacharyya_numeric: densities live on different base measures");

  double affinity, aff_err;
  if (p.support.discrete()) {
    require_discrete_hooks(p, "bhattacharyya_numeric");
    require_discrete_hooks(q, "bhattacharyya_numeric");
    auto term = [&](long long k) {
      const double pk = p.pdf(static_cast<double>(k));
      const double qk = q.pdf(static_cast<double>(k));
      if (pk <= 0.0 || qk <= 0.0) return 0.0;
      return std::pow(pk, alpha) * std::pow(qk, 1.0 - alpha);
    };
    auto ratio = [&](long long k) {
      return std::pow(p.ratio_bound(k), alpha) * std::pow(q.ratio_bound(k), 1.0 - alpha);
    };
    const SeriesResult s = sum_positive_series(term, ratio, cfg);
    if (!s.converged) throw_tolerance("bhattacharyya_numeric", s.value, s.abs_err);
    affinity = s.value;
    aff_err = s.abs_err;
  } else {
    const Interval shared = intersect(p.support.range, q.support.range);
    if (!(shared.lo < shared.hi)) return DivergenceValue::infinity(Method::oracle);
    const bool have_logs = p.log_pdf && q.log_pdf;
    auto f = [&](double x) {
      if (have_logs) {
        // exp(alpha log p + (1-alpha) log q): representable wherever the
        // affinity itself is, even when one factor alone underflows.
        const double e = alpha * p.log_pdf(x) + (1.0 - alpha) * q.log_pdf(x);
        return std::isfinite(e) ? std::exp(e) : 0.0;
      }
      const double px = p.pdf(x);
      if (px <= 0.0) return 0.0;
      const double qx = q.pdf(x);
      if (qx <= 0.0) return 0.0;
      return std::pow(px, alpha) * std::pow(qx, 1.0 - alpha);
    };
    double split = p.split_hint;
    if (!(split > shared.lo && split < shared.hi)) split = shared.anchor();
    const QuadResult qr = integrate_interval(f, shared, split, cfg);
    if (!qr.converged) throw_tolerance("bhattacharyya_numeric", qr.value, qr.abs_err);
    affinity = qr.value;
    aff_err = qr.abs_err;
  }

  if (!(affinity > 0.0)) return DivergenceValue::infinity(Method::oracle);
  return DivergenceValue::nonnegative(-std::log(affinity), Method::oracle, aff_err / affinity);
}

double expectation_numeric(const OracleDensity& p, const std::function<double(double)>& g,
                           const OracleConfig& cfg, double growth_coeff) {
  if (p.support.discrete()) {
    require_discrete_hooks(p, "expectation_numeric");
    const SeriesResult s =
        sum_series([&](long long k) { return p.pdf(static_cast<double>(k)); },
                   [&](long long k) { return g(static_cast<double>(k)); }, p.ratio_bound,
                   growth_coeff, cfg);
    if (!s.converged) throw_tolerance("expectation_numeric", s.value, s.abs_err);
    return s.value;
  }
  auto f = [&](double x) {
    const double px = p.pdf(x);
    return px == 0.0 ? 0.0 : px * g(x);
  };
  double split = p.split_hint;
  if (!(split > p.support.range.lo && split < p.support.range.hi))
    split = p.support.range.anchor();
  const QuadResult qr = integrate_interval(f, p.support.range, split, cfg);
  if (!qr.converged) throw_tolerance("expectation_numeric", qr.value, qr.abs_err);
  return qr.value;
}

double entropy_numeric(const OracleDensity& p, const OracleConfig& cfg) {
  auto neg_log_p = [&](double x) {
    const double px = p.pdf(x);
    return px <= 0.0 ? 0.0 : -std::log(px);
  };
  return expectation_numeric(p, neg_log_p, cfg, p.log_growth_coeff);
}

double normalization_numeric(const OracleDensity& p, const OracleConfig& cfg) {
  return expectation_numeric(p, [](double) { return 1.0; }, cfg, 1.0);
}

FdGrad finite_diff_grad(const std::function<double(const Vector&)>& f, const Vector& theta,
                        const OracleConfig& cfg, const Box* domain) {
  const int n = static_cast<int>(theta.size());
  FdGrad out{Vector(n), Vector(n)};
  for (int i = 0; i < n; ++i) {
    const double h = cfg.fd_step * std::max(1.0, std::fabs(theta[i]));
    if (domain) {
      Vector lo = theta, hi = theta;
      lo[i] -= 2.0 * h;
      hi[i] += 2.0 * h;
      if (!domain->contains(lo) || !domain->contains(hi))
        throw DomainError("finite_diff_grad: point closer than 2*fd_step to the boundary");
    }
    auto central = [&](double step) {
      Vector a = theta, b = theta;
      a[i] += step;
      b[i] -= step;
      return (f(a) - f(b)) / (2.0 * step);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    out.grad[i] = (4.0 * d2 - d1) / 3.0;
    out.abs_err[i] = std::fabs(d2 - d1) / 3.0 +
                     std::numeric_limits<double>::epsilon() * std::fabs(out.grad[i]);
  }
  return out;
}

}  // namespace duodiv
