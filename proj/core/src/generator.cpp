#include "duodiv/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

namespace duodiv {

namespace {

std::string format_point(const Vector& x) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%g", x[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s + ")";
}

[[noreturn]] void throw_domain(const std::string& name, const Vector& x, const char* what) {
  throw DomainError(name + ": " + what + " at " + format_point(x));
}

}  // namespace

ConvexGenerator::ConvexGenerator(std::string name, Box domain, EvalFn eval, GradFn grad)
    : name_(std::move(name)), domain_(std::move(domain)), eval_(std::move(eval)),
      grad_(std::move(grad)) {}

ConvexGenerator& ConvexGenerator::with_conjugate(Box dual_domain, EvalFn conj_eval,
                                                 GradFn conj_grad) {
  dual_domain_ = std::move(dual_domain);
  conj_eval_ = std::move(conj_eval);
  conj_grad_ = std::move(conj_grad);
  return *this;
}

ConvexGenerator& ConvexGenerator::with_conjugate_seed(GradFn seed) {
  seed_ = std::move(seed);
  return *this;
}

double ConvexGenerator::value(const Vector& theta) const {
  if (!in_domain(theta)) throw_domain(name_, theta, "argument outside domain");
  return eval_(theta);
}

Vector ConvexGenerator::gradient(const Vector& theta) const {
  if (!in_domain(theta)) throw_domain(name_, theta, "argument outside domain");
  return grad_(theta);
}

double ConvexGenerator::conjugate_value(const Vector& eta) const {
  if (!conj_eval_) throw Error(name_ + ": no closed-form conjugate registered");
  if (dual_domain_ && !dual_domain_->contains(eta))
    throw_domain(name_ + "*", eta, "argument outside gradient range");
  return conj_eval_(eta);
}

Vector ConvexGenerator::conjugate_gradient(const Vector& eta) const {
  if (!conj_grad_) throw Error(name_ + ": no closed-form conjugate gradient registered");
  if (dual_domain_ && !dual_domain_->contains(eta))
    throw_domain(name_ + "*", eta, "argument outside gradient range");
  return conj_grad_(eta);
}

// ---- numeric gradient inversion ---------------------------------------------

namespace {

// 1-D: solve F'(t) = eta on the open interval dom. F' is strictly increasing.
double invert_gradient_1d(const ConvexGenerator& F, double eta, const SolveOptions& opts) {
  const Interval dom = F.domain().coords[0];
  const double scale = std::max(1.0, std::fabs(eta));
  auto g = [&](double t) { return F.gradient1(t) - eta; };

  // Bracket the root by walking toward the boundary the sign of g points at:
  // geometric approach to a finite endpoint, doubling steps toward infinity.
  double a = dom.anchor();
  double ga = g(a);
  double b = a, gb = ga;
  if (ga != 0.0) {
    const bool go_right = ga < 0.0;  // g increasing: negative means root is right
    double t = a;
    double step = 1.0;
    bool bracketed = false;
    for (int i = 0; i < 256; ++i) {
      double next;
      if (go_right) {
        next = std::isfinite(dom.hi) ? 0.5 * (t + dom.hi) : t + step;
      } else {
        next = std::isfinite(dom.lo) ? 0.5 * (t + dom.lo) : t - step;
      }
      step *= 2.0;
      if (!dom.contains(next) || next == t || std::fabs(next) > 1e100) break;
      const double gn = g(next);
      if ((go_right && gn >= 0.0) || (!go_right && gn <= 0.0)) {
        a = go_right ? t : next;
        ga = go_right ? gb : gn;  // note: gb tracks g at previous t
        b = go_right ? next : t;
        gb = go_right ? gn : gb;
        bracketed = true;
        break;
      }
      t = next;
      gb = gn;
    }
    if (!bracketed)
      throw DomainError(F.name() + ": no solution to grad F = eta; eta outside gradient range");
    // Normalize so that a < b.
    if (a > b) std::swap(a, b);
    ga = g(a);
    gb = g(b);
  }

  // Safeguarded Newton: finite-difference slope, bisection fallback whenever
  // the Newton step leaves the bracket.
  double t = 0.5 * (a + b);
  for (int it = 0; it < opts.max_iter; ++it) {
    const double gt = g(t);
    if (std::fabs(gt) <= opts.tol * scale) return t;
    if (gt < 0.0) a = t; else b = t;

    const double h = std::max(1e-7, 1e-7 * std::fabs(t));
    double slope;
    if (dom.contains(t - h) && dom.contains(t + h))
      slope = (g(t + h) - g(t - h)) / (2.0 * h);
    else if (dom.contains(t + h))
      slope = (g(t + h) - gt) / h;
    else
      slope = (gt - g(t - h)) / h;

    double next = slope > 0.0 ? t - gt / slope : a - 1.0;  // force fallback on bad slope
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (next == t) break;  // bracket exhausted at roundoff limit
    t = next;
  }
  if (std::fabs(g(t)) <= 1e4 * opts.tol * scale) return t;  // near miss: accept, gap is tiny
  throw ConvergenceError(F.name() + ": gradient inversion did not converge");
}

// Solve the small dense system J d = r in place. Partial pivoting; dim <= 4.
Vector solve_linear(std::vector<Vector> J, Vector r) {
  const int n = static_cast<int>(r.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::fabs(J[i][col]) > std::fabs(J[piv][col])) piv = i;
    std::swap(J[col], J[piv]);
    std::swap(r[col], r[piv]);
    if (J[col][col] == 0.0) throw ConvergenceError("singular Jacobian in gradient inversion");
    for (int i = col + 1; i < n; ++i) {
      const double f = J[i][col] / J[col][col];
      for (int j = col; j < n; ++j) J[i][j] -= f * J[col][j];
      r[i] -= f * r[col];
    }
  }
  Vector d(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = r[i];
    for (int j = i + 1; j < n; ++j) s -= J[i][j] * d[j];
    d[i] = s / J[i][i];
  }
  return d;
}

double inf_norm(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// n-D: damped Newton on r(theta) = grad F(theta) - eta with a central
// finite-difference Jacobian, backtracking on both domain exit and residual
// growth.
Vector invert_gradient_nd(const ConvexGenerator& F, const Vector& eta, const Vector& seed,
                          const SolveOptions& opts) {
  const int n = F.dim();
  const double scale = std::max(1.0, inf_norm(eta));
  Vector theta = seed;
  Vector r = sub(F.gradient(theta), eta);

  for (int it = 0; it < opts.max_iter; ++it) {
    const double rn = inf_norm(r);
    if (rn <= opts.tol * scale) return theta;

    std::vector<Vector> J(n, Vector(n));
    for (int j = 0; j < n; ++j) {
      double h = std::max(1e-6, 1e-6 * std::fabs(theta[j]));
      Vector tp = theta, tm = theta;
      tp[j] += h;
      tm[j] -= h;
      const Interval& c = F.domain().coords[j];
      if (!c.contains(tp[j])) tp[j] = theta[j];
      if (!c.contains(tm[j])) tm[j] = theta[j];
      const double span = tp[j] - tm[j];
      if (span == 0.0) throw ConvergenceError(F.name() + ": stuck at domain boundary");
      const Vector gp = F.gradient(tp);
      const Vector gm = F.gradient(tm);
      for (int i = 0; i < n; ++i) J[i][j] = (gp[i] - gm[i]) / span;
    }

    Vector d = solve_linear(J, r);  // Newton step is theta - d
    double lambda = 1.0;
    bool stepped = false;
    while (lambda >= 1e-12) {
      Vector cand(n);
      for (int i = 0; i < n; ++i) cand[i] = theta[i] - lambda * d[i];
      if (F.in_domain(cand)) {
        Vector rc = sub(F.gradient(cand), eta);
        if (inf_norm(rc) < rn * (1.0 - 1e-4 * lambda) || inf_norm(rc) <= opts.tol * scale) {
          theta = std::move(cand);
          r = std::move(rc);
          stepped = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!stepped) throw ConvergenceError(F.name() + ": gradient inversion stalled");
  }
  if (inf_norm(r) <= 1e4 * opts.tol * scale) return theta;
  throw ConvergenceError(F.name() + ": gradient inversion did not converge");
}

Vector solver_seed(const ConvexGenerator& F, const Vector& eta) {
  if (F.conjugate_seed()) return F.conjugate_seed()(eta);
  Vector s(F.dim());
  for (int i = 0; i < F.dim(); ++i) s[i] = F.domain().coords[i].anchor();
  return s;
}

Vector invert_gradient(const ConvexGenerator& F, const Vector& eta, const SolveOptions& opts) {
  if (static_cast<int>(eta.size()) != F.dim())
    throw DomainError(F.name() + ": eta dimension mismatch");
  if (F.dim() == 1) return Vector{invert_gradient_1d(F, eta[0], opts)};
  return invert_gradient_nd(F, eta, solver_seed(F, eta), opts);
}

}  // namespace

Vector grad_conjugate(const ConvexGenerator& F, const Vector& eta, const SolveOptions& opts) {
  if (F.has_closed_conjugate_gradient()) return F.conjugate_gradient(eta);
  return invert_gradient(F, eta, opts);
}

double legendre_conjugate_numeric(const ConvexGenerator& F, const Vector& eta,
                                  const SolveOptions& opts) {
  const Vector theta = invert_gradient(F, eta, opts);
  return dot(theta, eta) - F.value(theta);
}

double legendre_conjugate(const ConvexGenerator& F, const Vector& eta, const SolveOptions& opts) {
  if (F.has_closed_conjugate()) return F.conjugate_value(eta);
  return legendre_conjugate_numeric(F, eta, opts);
}

double legendre_conjugate(const ConvexGenerator& F, double eta, const SolveOptions& opts) {
  return legendre_conjugate(F, Vector{eta}, opts);
}

ConvexGenerator conjugate_generator(const ConvexGenerator& F) {
  // Copy F by value into the closures: the result must outlive the argument.
  ConvexGenerator copy = F;
  Box dual = F.dual_domain() ? *F.dual_domain() : Box::real_line(F.dim());

  ConvexGenerator::EvalFn eval;
  ConvexGenerator::GradFn grad;
  if (F.has_closed_conjugate())
    eval = [copy](const Vector& eta) { return copy.conjugate_value(eta); };
  else
    eval = [copy](const Vector& eta) { return legendre_conjugate_numeric(copy, eta); };
  if (F.has_closed_conjugate_gradient())
    grad = [copy](const Vector& eta) { return copy.conjugate_gradient(eta); };
  else
    grad = [copy](const Vector& eta) { return grad_conjugate(copy, eta); };

  ConvexGenerator result(F.name() + "*", std::move(dual), std::move(eval), std::move(grad));
  result.with_conjugate(F.domain(),
                        [copy](const Vector& theta) { return copy.value(theta); },
                        [copy](const Vector& theta) { return copy.gradient(theta); });
  return result;
}

ConjugatePair make_conjugate_pair(const ConvexGenerator& F) {
  return ConjugatePair{F, conjugate_generator(F)};
}

// ---- dominance ---------------------------------------------------------------

Vector halton_point(int n, int dim) {
  static constexpr int bases[4] = {2, 3, 5, 7};
  Vector u(dim);
  for (int d = 0; d < dim; ++d) {
    const int base = bases[d % 4];
    double f = 1.0, r = 0.0;
    for (int i = n; i > 0; i /= base) {
      f /= base;
      r += f * (i % base);
    }
    u[d] = r;
  }
  return u;
}

bool check_dominance(const ConvexGenerator& F1, const ConvexGenerator& F2,
                     const DominanceOptions& opts) {
  if (F1.dim() != F2.dim())
    throw DomainError("check_dominance: generators of different dimension");
  Box shared = intersect(F1.domain(), F2.domain());
  for (auto& c : shared.coords) c = c.clipped(opts.bound);
  if (shared.empty())
    throw DomainError("check_dominance: empty domain intersection");

  for (int n = 1; n <= opts.samples; ++n) {
    const Vector u = halton_point(n, shared.dim());
    Vector x(shared.dim());
    for (int d = 0; d < shared.dim(); ++d) {
      const Interval& c = shared.coords[d];
      x[d] = c.lo + u[d] * (c.hi - c.lo);
    }
    try {
      if (F1.value(x) < F2.value(x) - opts.tol) return false;
    } catch (const DegenerateError&) {
      // Point is outside the numerically evaluable region of one generator
      // (e.g. a truncation-window mass underflowing at extreme parameters);
      // dominance is judged on the evaluable samples.
      continue;
    }
  }
  return true;
}

// ---- catalog -----------------------------------------------------------------

namespace gen {

namespace {
std::string with_param(const char* stem, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%g)", stem, v);
  return buf;
}
}  // namespace

ConvexGenerator quadratic(double a) {
  if (!(a > 0.0)) throw ParamError("quadratic: curvature a must be positive");
  ConvexGenerator F(with_param("quadratic", a), Box::real_line(),
                    [a](const Vector& t) { return 0.5 * a * t[0] * t[0]; },
                    [a](const Vector& t) { return Vector{a * t[0]}; });
  F.with_conjugate(Box::real_line(),
                   [a](const Vector& e) { return e[0] * e[0] / (2.0 * a); },
                   [a](const Vector& e) { return Vector{e[0] / a}; });
  return F;
}

ConvexGenerator square(Interval domain) {
  ConvexGenerator F("square", Box{domain},
                    [](const Vector& t) { return t[0] * t[0]; },
                    [](const Vector& t) { return Vector{2.0 * t[0]}; });
  F.with_conjugate(Box{Interval{2.0 * domain.lo, 2.0 * domain.hi}},
                   [](const Vector& e) { return 0.25 * e[0] * e[0]; },
                   [](const Vector& e) { return Vector{0.5 * e[0]}; });
  return F;
}

ConvexGenerator fourth_power(Interval domain) {
  auto cube = [](double x) { return x * x * x; };
  ConvexGenerator F("fourth_power", Box{domain},
                    [](const Vector& t) {
                      const double s = t[0] * t[0];
                      return s * s;
                    },
                    [cube](const Vector& t) { return Vector{4.0 * cube(t[0])}; });
  // sup eta.theta - theta^4 at theta = (eta/4)^{1/3}: (3/4^{4/3}) |eta|^{4/3}.
  const double c = 3.0 / std::pow(4.0, 4.0 / 3.0);
  F.with_conjugate(Box{Interval{4.0 * cube(domain.lo), 4.0 * cube(domain.hi)}},
                   [c](const Vector& e) { return c * std::pow(std::fabs(e[0]), 4.0 / 3.0); },
                   [](const Vector& e) {
                     const double m = std::cbrt(std::fabs(e[0]) / 4.0);
                     return Vector{e[0] < 0.0 ? -m : m};
                   });
  return F;
}

ConvexGenerator exp_of() {
  ConvexGenerator F("exp", Box::real_line(),
                    [](const Vector& t) { return std::exp(t[0]); },
                    [](const Vector& t) { return Vector{std::exp(t[0])}; });
  F.with_conjugate(Box{Interval{0.0, inf}},
                   [](const Vector& e) { return e[0] * std::log(e[0]) - e[0]; },
                   [](const Vector& e) { return Vector{std::log(e[0])}; });
  return F;
}

ConvexGenerator log_geometric() {
  ConvexGenerator F("log_geometric", Box{Interval{-inf, 0.0}},
                    [](const Vector& t) { return -std::log1p(-std::exp(t[0])); },
                    [](const Vector& t) { return Vector{1.0 / std::expm1(-t[0])}; });
  F.with_conjugate(Box{Interval{0.0, inf}},
                   [](const Vector& e) {
                     return e[0] * std::log(e[0]) - (1.0 + e[0]) * std::log1p(e[0]);
                   },
                   [](const Vector& e) { return Vector{std::log(e[0]) - std::log1p(e[0])}; });
  return F;
}

ConvexGenerator neg_log(double shift, std::string name) {
  ConvexGenerator F(std::move(name), Box{Interval{0.0, inf}},
                    [shift](const Vector& t) { return -std::log(t[0]) + shift; },
                    [](const Vector& t) { return Vector{-1.0 / t[0]}; });
  F.with_conjugate(Box{Interval{-inf, 0.0}},
                   [shift](const Vector& e) { return -1.0 - std::log(-e[0]) - shift; },
                   [](const Vector& e) { return Vector{-1.0 / e[0]}; });
  return F;
}

ConvexGenerator scaled_neg_log(double k, double shift, std::string name) {
  if (!(k > 0.0)) throw ParamError("scaled_neg_log: k must be positive");
  ConvexGenerator F(std::move(name), Box{Interval{0.0, inf}},
                    [k, shift](const Vector& t) { return -k * std::log(t[0]) + shift; },
                    [k](const Vector& t) { return Vector{-k / t[0]}; });
  F.with_conjugate(Box{Interval{-inf, 0.0}},
                   [k, shift](const Vector& e) { return -k + k * std::log(-k / e[0]) - shift; },
                   [k](const Vector& e) { return Vector{-k / e[0]}; });
  return F;
}

}  // namespace gen

}  // namespace duodiv
