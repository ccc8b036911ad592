// Convex generators: closed-form vs numeric conjugates, gradient inversion,
// Fenchel-Young equality, dominance sampling, and convexity spot checks.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "duodiv/errors.hpp"
#include "duodiv/generator.hpp"
#include "duodiv/linalg.hpp"

using namespace duodiv;

namespace {

// Deterministic interior points of an open interval.
std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> xs;
  xs.reserve(n);
  for (int i = 1; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / (n + 1.0));
  return xs;
}

}  // namespace

TEST_CASE("catalog conjugates match the numeric Legendre transform") {
  struct Case {
    ConvexGenerator F;
    double eta_lo, eta_hi;  // probe window inside the dual domain
  };
  const std::vector<Case> cases = {
      {gen::quadratic(1.0), -3.0, 3.0},
      {gen::quadratic(2.5), -3.0, 3.0},
      {gen::square({0.0, 1.0}), 0.05, 1.95},
      {gen::fourth_power({0.0, 1.0}), 0.05, 3.9},
      {gen::exp_of(), 0.1, 20.0},
      {gen::log_geometric(), 0.05, 20.0},
      {gen::neg_log(0.0, "exp_family"), -20.0, -0.05},
      {gen::neg_log(std::log(2.0), "laplace_family"), -20.0, -0.05},
      {gen::scaled_neg_log(0.5, 0.5 * std::log(std::numbers::pi / 2.0), "half_normal_scale"),
       -20.0, -0.05},
  };
  for (const auto& c : cases) {
    CAPTURE(c.F.name());
    REQUIRE(c.F.has_closed_conjugate());
    for (double eta : grid(c.eta_lo, c.eta_hi, 100)) {
      CAPTURE(eta);
      const double closed = c.F.conjugate_value(Vector{eta});
      const double numeric = legendre_conjugate_numeric(c.F, Vector{eta});
      CHECK(std::fabs(closed - numeric) <= 1e-8 * (1.0 + std::fabs(closed)));
    }
  }
}

TEST_CASE("fourth power conjugate value at eta = 1 is 3/4^(4/3)") {
  const auto F = gen::fourth_power({0.0, 2.0});
  const double expected = 0.4724703937105774367877;  // 3/4^(4/3)
  CHECK(std::fabs(F.conjugate_value(Vector{1.0}) - expected) <= 1e-14);
  CHECK(std::fabs(legendre_conjugate(F, 1.0) - expected) <= 1e-14);
  CHECK(std::fabs(legendre_conjugate_numeric(F, Vector{1.0}) - expected) <= 1e-9);
}

TEST_CASE("quadratic conjugate is eta^2/(2a)") {
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    const auto F = gen::quadratic(a);
    for (double eta : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
      CHECK(F.conjugate_value(Vector{eta}) == doctest::Approx(eta * eta / (2.0 * a)).epsilon(1e-14));
    }
  }
}

TEST_CASE("Fenchel-Young holds with equality at eta = grad F(theta)") {
  const std::vector<ConvexGenerator> Fs = {
      gen::quadratic(2.0),
      gen::exp_of(),
      gen::log_geometric(),
      gen::neg_log(std::log(2.0), "laplace_family"),
      gen::square({0.0, 1.0}),
      gen::fourth_power({0.0, 1.0}),
  };
  for (const auto& F : Fs) {
    CAPTURE(F.name());
    const Interval dom = F.domain().coords[0];
    const double lo = std::isinf(dom.lo) ? -2.0 : dom.lo;
    const double hi = std::isinf(dom.hi) ? 2.0 : dom.hi;
    for (double theta : grid(lo, hi, 25)) {
      const double eta = F.gradient1(theta);
      const double gap = F.value(theta) + legendre_conjugate(F, eta) - theta * eta;
      CHECK(std::fabs(gap) <= 1e-9 * (1.0 + std::fabs(F.value(theta))));
    }
  }
}

TEST_CASE("grad_conjugate inverts the gradient map") {
  const std::vector<ConvexGenerator> Fs = {
      gen::quadratic(1.5),
      gen::exp_of(),
      gen::log_geometric(),
      gen::neg_log(),
      gen::scaled_neg_log(0.5, 0.5 * std::log(2.0 * std::numbers::pi), "normal_scale"),
  };
  for (const auto& F : Fs) {
    CAPTURE(F.name());
    const Interval dom = F.domain().coords[0];
    const double lo = std::isinf(dom.lo) ? -2.0 : dom.lo;
    const double hi = std::isinf(dom.hi) ? 3.0 : dom.hi;
    for (double theta : grid(lo, hi, 20)) {
      const double eta = F.gradient1(theta);
      const Vector back = grad_conjugate(F, Vector{eta});
      CHECK(std::fabs(back[0] - theta) <= 1e-8 * (1.0 + std::fabs(theta)));
    }
  }
}

TEST_CASE("conjugate of eta outside the gradient range is rejected") {
  CHECK_THROWS_AS((void)legendre_conjugate(gen::neg_log(), 1.0), DomainError);
  CHECK_THROWS_AS((void)legendre_conjugate(gen::exp_of(), -0.5), DomainError);
  CHECK_THROWS_AS((void)legendre_conjugate(gen::log_geometric(), -1.0), DomainError);
}

TEST_CASE("check_dominance accepts majorants and rejects non-majorants") {
  // (a/2) theta^2 with larger a dominates on all of R.
  CHECK(check_dominance(gen::quadratic(2.0), gen::quadratic(1.0)));
  CHECK_FALSE(check_dominance(gen::quadratic(0.5), gen::quadratic(1.0)));
  // On (0,1), theta^2 >= theta^4.
  CHECK(check_dominance(gen::square({0.0, 1.0}), gen::fourth_power({0.0, 1.0})));
  CHECK_FALSE(check_dominance(gen::fourth_power({0.0, 1.0}), gen::square({0.0, 1.0})));
  // Reflexive: F >= F.
  CHECK(check_dominance(gen::exp_of(), gen::exp_of()));
  // Laplacian log-normalizer dominates the exponential one (gap log 2).
  CHECK(check_dominance(gen::neg_log(std::log(2.0), "laplace_family"), gen::neg_log()));
  CHECK_FALSE(check_dominance(gen::neg_log(), gen::neg_log(std::log(2.0), "laplace_family")));
}

TEST_CASE("generators are strictly convex on sampled triples") {
  const std::vector<ConvexGenerator> Fs = {
      gen::quadratic(1.0), gen::exp_of(), gen::log_geometric(), gen::neg_log(),
      gen::fourth_power({0.0, 1.0}),
  };
  for (const auto& F : Fs) {
    CAPTURE(F.name());
    const Interval dom = F.domain().coords[0];
    const double lo = std::isinf(dom.lo) ? -2.0 : dom.lo;
    const double hi = std::isinf(dom.hi) ? 2.0 : dom.hi;
    const auto xs = grid(lo, hi, 9);
    for (size_t i = 0; i < xs.size(); ++i) {
      for (size_t j = i + 2; j < xs.size(); j += 2) {
        const double mid = 0.5 * (xs[i] + xs[j]);
        CHECK(F.value(mid) < 0.5 * F.value(xs[i]) + 0.5 * F.value(xs[j]));
      }
    }
  }
}

TEST_CASE("registered gradients match central finite differences") {
  const std::vector<ConvexGenerator> Fs = {
      gen::quadratic(3.0), gen::exp_of(), gen::log_geometric(), gen::neg_log(),
      gen::square({0.0, 1.0}), gen::fourth_power({0.0, 1.0}),
  };
  for (const auto& F : Fs) {
    CAPTURE(F.name());
    const Interval dom = F.domain().coords[0];
    const double lo = std::isinf(dom.lo) ? -1.5 : dom.lo;
    const double hi = std::isinf(dom.hi) ? 1.5 : dom.hi;
    for (double theta : grid(lo, hi, 15)) {
      const double h = 1e-5 * std::max(1.0, std::fabs(theta));
      if (theta - h <= dom.lo || theta + h >= dom.hi) continue;
      const double fd = (F.value(theta + h) - F.value(theta - h)) / (2.0 * h);
      CHECK(std::fabs(F.gradient1(theta) - fd) <= 1e-6 * (1.0 + std::fabs(fd)));
    }
  }
}

TEST_CASE("conjugate_generator round-trips and biconjugation is exact") {
  const auto F = gen::exp_of();
  const auto Fstar = conjugate_generator(F);
  CHECK(Fstar.dim() == 1);
  for (double eta : grid(0.1, 5.0, 12)) {
    CHECK(Fstar.value(eta) == doctest::Approx(F.conjugate_value(Vector{eta})).epsilon(1e-14));
    // grad F*(eta) inverts grad F.
    CHECK(F.gradient1(Fstar.gradient1(eta)) == doctest::Approx(eta).epsilon(1e-12));
  }
  // F** = F through the registered conjugate of the conjugate.
  REQUIRE(Fstar.has_closed_conjugate());
  for (double theta : grid(-2.0, 2.0, 9)) {
    CHECK(Fstar.conjugate_value(Vector{theta}) == doctest::Approx(F.value(theta)).epsilon(1e-14));
  }

  const auto pair = make_conjugate_pair(gen::neg_log());
  for (double theta : grid(0.2, 4.0, 9)) {
    const double eta = pair.primal.gradient1(theta);
    CHECK(pair.dual.value(eta) ==
          doctest::Approx(theta * eta - pair.primal.value(theta)).epsilon(1e-12));
  }
}

TEST_CASE("numeric-only generators still conjugate through the solver") {
  // Strip the closed form by rebuilding from value/gradient only.
  const auto F = gen::exp_of();
  ConvexGenerator numeric_only(
      "exp_numeric", Box::real_line(1), [&F](const Vector& t) { return F.value(t); },
      [&F](const Vector& t) { return F.gradient(t); });
  CHECK(numeric_only.conjugate_mode() == ConjugateMode::numeric);
  for (double eta : grid(0.2, 8.0, 10)) {
    const double expected = eta * std::log(eta) - eta;
    CHECK(std::fabs(legendre_conjugate(numeric_only, Vector{eta}) - expected) <=
          1e-8 * (1.0 + std::fabs(expected)));
  }
}

TEST_CASE("domain violations throw DomainError") {
  CHECK_THROWS_AS((void)gen::neg_log().value(-1.0), DomainError);
  CHECK_THROWS_AS((void)gen::neg_log().value(0.0), DomainError);  // open boundary
  CHECK_THROWS_AS((void)gen::log_geometric().value(0.5), DomainError);
  CHECK_THROWS_AS((void)gen::square({0.0, 1.0}).gradient1(1.5), DomainError);
}

TEST_CASE("halton points are deterministic and inside the unit box") {
  for (int n = 1; n <= 64; ++n) {
    const Vector p = halton_point(n, 2);
    REQUIRE(p.size() == 2u);
    CHECK(p[0] > 0.0);
    CHECK(p[0] < 1.0);
    CHECK(p[1] > 0.0);
    CHECK(p[1] < 1.0);
  }
  CHECK(halton_point(1, 1)[0] == doctest::Approx(0.5));
  CHECK(halton_point(2, 1)[0] == doctest::Approx(0.25));
  CHECK(halton_point(3, 1)[0] == doctest::Approx(0.75));
  CHECK(halton_point(1, 2)[1] == doctest::Approx(1.0 / 3.0));
}
