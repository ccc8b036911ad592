// Duo Bregman / Fenchel-Young / Jensen divergences: worked values, reduction
// to the classical definitions, duality, sandwich bounds, and scaling limits.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "duodiv/divergence.hpp"
#include "duodiv/errors.hpp"
#include "duodiv/generator.hpp"
#include "duodiv/linalg.hpp"

using namespace duodiv;

namespace {

DuoPair quad_pair(double a) {
  // (a/2) theta^2 majorizes (1/2) theta^2 exactly when a >= 1.
  return a >= 1.0 ? DuoPair::checked(gen::quadratic(a), gen::quadratic(1.0))
                  : DuoPair::unchecked(gen::quadratic(a), gen::quadratic(1.0));
}

}  // namespace

TEST_CASE("duo Bregman between scaled quadratics has the closed value") {
  // B_{F1,F2}(t:t') = (a/2) t^2 - (1/2) t'^2 - (t - t') t' with F2 = theta^2/2.
  auto value = [](double a, double t, double tp) {
    return duo_bregman(quad_pair(a), Vector{t}, Vector{tp}).value();
  };
  CHECK(value(2.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(value(2.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));   // residual (a-1)/2 t^2
  CHECK(value(1.0, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));   // classical quadratic
  CHECK(value(0.5, 1.0, 1.0) == doctest::Approx(-0.25).epsilon(1e-13));  // a<1: can go negative
}

TEST_CASE("checked pairs refuse a non-dominating majorant") {
  CHECK_THROWS_AS(DuoPair::checked(gen::quadratic(0.5), gen::quadratic(1.0)), DominanceError);
  CHECK_THROWS_AS(DuoPair::checked(gen::neg_log(), gen::neg_log(std::log(2.0), "laplace_family")),
                  DominanceError);
  CHECK_NOTHROW(DuoPair::checked(gen::quadratic(1.0), gen::quadratic(1.0)));
}

TEST_CASE("classical Bregman reproduces Itakura-Saito for the burg generator") {
  // F = -log(theta): B_F(2:1) = -log 2 - 0 - (2-1)(-1) = 1 - log 2.
  const auto F = gen::neg_log();
  CHECK(bregman(F, Vector{2.0}, Vector{1.0}).value() ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
  CHECK(bregman(F, Vector{1.0}, Vector{2.0}).value() ==
        doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-14));
}

TEST_CASE("duo divergences collapse to the classical ones when F1 = F2") {
  const std::vector<ConvexGenerator> Fs = {gen::quadratic(2.0), gen::exp_of(), gen::neg_log()};
  for (const auto& F : Fs) {
    CAPTURE(F.name());
    const auto pair = DuoPair::checked(F, F);
    for (double t : {0.25, 0.5, 1.5}) {
      for (double tp : {0.3, 0.9, 2.0}) {
        const double classical = bregman(F, Vector{t}, Vector{tp}).value();
        const double duo = duo_bregman(pair, Vector{t}, Vector{tp}).value();
        CHECK(std::fabs(duo - classical) <= 1e-12 * (1.0 + std::fabs(classical)));
        const double j = jensen(F, Vector{t}, Vector{tp}, 0.25).value();
        const double dj = duo_jensen(pair, Vector{t}, Vector{tp}, 0.25).value();
        CHECK(std::fabs(dj - j) <= 1e-12 * (1.0 + std::fabs(j)));
      }
    }
  }
}

TEST_CASE("duo Bregman sandwiches above the minorant's classical Bregman") {
  // F1 >= F2 implies B_{F1,F2}(t:t') >= B_{F2}(t:t') >= 0.
  const auto pair = DuoPair::checked(gen::neg_log(std::log(2.0), "laplace_family"),
                                     gen::neg_log());
  for (double t : {0.2, 0.7, 1.0, 3.0}) {
    for (double tp : {0.4, 1.0, 2.5}) {
      const double duo = duo_bregman(pair, Vector{t}, Vector{tp}).value();
      const double classical = bregman(pair.minorant(), Vector{t}, Vector{tp}).value();
      CHECK(duo >= classical - 1e-14);
      CHECK(duo >= -1e-14);
    }
  }
}

TEST_CASE("primal duo Bregman equals the dual-coordinate form") {
  struct Case {
    DuoPair pair;
    std::vector<double> thetas;
  };
  const std::vector<Case> cases = {
      {quad_pair(2.0), {-1.5, -0.5, 0.5, 1.0, 2.0}},
      {DuoPair::checked(gen::neg_log(std::log(2.0), "laplace_family"), gen::neg_log()),
       {0.3, 0.8, 1.0, 2.0, 5.0}},
      {DuoPair::checked(gen::square({0.0, 1.0}), gen::fourth_power({0.0, 1.0})),
       {0.15, 0.4, 0.6, 0.85}},
  };
  for (const auto& c : cases) {
    for (double t : c.thetas) {
      for (double tp : c.thetas) {
        const Vector eta = c.pair.majorant().gradient(Vector{t});
        const Vector eta_p = c.pair.minorant().gradient(Vector{tp});
        const double primal = duo_bregman(c.pair, Vector{t}, Vector{tp}).value();
        const double dual = dual_duo_bregman(c.pair, eta_p, eta).value();
        CHECK(std::fabs(primal - dual) <= 1e-8 * (1.0 + std::fabs(primal)));
      }
    }
  }
}

TEST_CASE("duo Fenchel-Young matches duo Bregman at matched coordinates") {
  const auto pair = DuoPair::checked(gen::neg_log(std::log(2.0), "laplace_family"),
                                     gen::neg_log());
  for (double t : {0.3, 1.0, 2.0}) {
    for (double tp : {0.5, 1.0, 4.0}) {
      const Vector eta_p = pair.minorant().gradient(Vector{tp});
      const double fy = duo_fenchel_young(pair, Vector{t}, eta_p).value();
      const double db = duo_bregman(pair, Vector{t}, Vector{tp}).value();
      CHECK(std::fabs(fy - db) <= 1e-12 * (1.0 + std::fabs(db)));
    }
  }
  // Classical Fenchel-Young inequality: zero exactly at eta = grad F(theta).
  const auto F = gen::exp_of();
  const double t0 = 0.7;
  CHECK(fenchel_young(F, Vector{t0}, F.gradient(Vector{t0})).value() ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fenchel_young(F, Vector{t0}, Vector{3.0}).value() > 0.0);
}

TEST_CASE("jensen divergence of the unit quadratic is alpha(1-alpha)/2 (t1-t2)^2") {
  const auto F = gen::quadratic(1.0);
  CHECK(jensen(F, Vector{2.0}, Vector{0.0}, 0.5).value() ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(jensen(F, Vector{3.0}, Vector{-1.0}, 0.25).value() ==
        doctest::Approx(0.25 * 0.75 * 0.5 * 16.0).epsilon(1e-14));
}

TEST_CASE("duo Jensen worked value for the exponential/Laplacian generator pair") {
  // F1 = -log t (minorant), F2 = -log t + log 2 (majorant); at t1 = t2 = 1,
  // J = a F1(1) + (1-a) F2(1) - F1(1) = (1-a) log 2.
  const auto F1 = gen::neg_log();
  const auto F2 = gen::neg_log(std::log(2.0), "laplace_family");
  for (double a : {0.25, 0.5, 0.75}) {
    CHECK(duo_jensen(F1, F2, Vector{1.0}, Vector{1.0}, a).value() ==
          doctest::Approx((1.0 - a) * std::log(2.0)).epsilon(1e-14));
  }
  // Pair form evaluates the mixture under the minorant.
  const auto pair = DuoPair::checked(F2, F1);
  CHECK(duo_jensen(pair, Vector{1.0}, Vector{1.0}, 0.5).value() ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("duo Jensen stays nonnegative and dominates classical Jensen") {
  const auto F1 = gen::quadratic(1.0);
  const auto F2 = gen::quadratic(3.0);
  for (double t1 : {-1.0, 0.2, 1.4}) {
    for (double t2 : {-0.6, 0.5, 2.0}) {
      for (double a : {0.1, 0.5, 0.9}) {
        const double dj = duo_jensen(F1, F2, Vector{t1}, Vector{t2}, a).value();
        const double j = jensen(F1, Vector{t1}, Vector{t2}, a).value();
        CHECK(dj >= j - 1e-14);
        CHECK(dj >= -1e-14);
      }
    }
  }
}

TEST_CASE("scaled Jensen approaches the Bregman limit as alpha -> 0") {
  // (1/alpha) J_{F,alpha}(t2:t1) -> B_F(t2:t1).
  const auto F = gen::exp_of();
  const Vector t1{0.3}, t2{1.4};
  const double limit = bregman(F, t2, t1).value();
  double prev = std::numeric_limits<double>::infinity();
  for (double a : {1e-3, 1e-4, 1e-5}) {
    const double scaled = jensen(F, t2, t1, a).value() / a;
    const double gap = std::fabs(scaled - limit);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("scaled duo Jensen approaches the duo Bregman limit as alpha -> 1") {
  // (1/(1-alpha)) J_{F1,F2,alpha}(t1:t2) -> B_{F2,F1}(t2:t1).
  const auto F1 = gen::quadratic(1.0);
  const auto F2 = gen::quadratic(2.0);
  const Vector t1{1.2}, t2{0.4};
  const double limit = duo_bregman(F2, F1, t2, t1).value();
  double prev = std::numeric_limits<double>::infinity();
  for (double a : {1e-3, 1e-4, 1e-5}) {
    const double scaled = duo_jensen(F1, F2, t1, t2, 1.0 - a).value() / a;
    const double gap = std::fabs(scaled - limit);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("alpha outside (0,1) is rejected") {
  const auto F = gen::quadratic(1.0);
  CHECK_THROWS_AS((void)jensen(F, Vector{1.0}, Vector{0.0}, 0.0), AlphaError);
  CHECK_THROWS_AS((void)jensen(F, Vector{1.0}, Vector{0.0}, 1.0), AlphaError);
  CHECK_THROWS_AS((void)duo_jensen(F, gen::quadratic(2.0), Vector{1.0}, Vector{0.0}, -0.1),
                  AlphaError);
  CHECK_THROWS_AS((void)duo_jensen(F, gen::quadratic(2.0), Vector{1.0}, Vector{0.0}, 1.5),
                  AlphaError);
}

TEST_CASE("symmetrized duo Bregman equals its expanded form") {
  const auto F1 = gen::neg_log(std::log(2.0), "laplace_family");  // majorant
  const auto F2 = gen::neg_log();                                 // minorant
  const auto pair = DuoPair::checked(F1, F2);
  for (double t1 : {0.4, 1.0, 2.2}) {
    for (double t2 : {0.6, 1.7}) {
      const double sym = symmetrized_duo_bregman(pair, Vector{t1}, Vector{t2}).value();
      // Sum of the two orientations.
      const double as_sum = duo_bregman(pair, Vector{t1}, Vector{t2}).value() +
                            duo_bregman(pair, Vector{t2}, Vector{t1}).value();
      CHECK(std::fabs(sym - as_sum) <= 1e-10 * (1.0 + std::fabs(as_sum)));
      // Inner-product-plus-gap expansion.
      const double expanded =
          (t1 - t2) * (F2.gradient1(t1) - F2.gradient1(t2)) +
          (F1.value(t1) - F2.value(t1)) + (F1.value(t2) - F2.value(t2));
      CHECK(std::fabs(sym - expanded) <= 1e-10 * (1.0 + std::fabs(expanded)));
      // Symmetry in the arguments.
      CHECK(sym ==
            doctest::Approx(symmetrized_duo_bregman(pair, Vector{t2}, Vector{t1}).value()));
    }
  }
  // Quadratic spot value: majorant theta^2, minorant theta^2/2, thetas 2 and 1:
  // B(2:1) + B(1:2) = (4 - 1/2 - 1) + (1 - 2 + 2) = 3.5.
  const auto qp = quad_pair(2.0);
  CHECK(symmetrized_duo_bregman(qp, Vector{2.0}, Vector{1.0}).value() ==
        doctest::Approx(3.5).epsilon(1e-14));
}

TEST_CASE("Jeffreys-symmetrized Bregman is the inner product of gaps") {
  // J(t1,t2) = B(t1:t2) + B(t2:t1) = <t1 - t2, grad F(t1) - grad F(t2)>.
  const auto F = gen::exp_of();
  for (double t1 : {-0.5, 0.3, 1.1}) {
    for (double t2 : {-1.0, 0.8}) {
      const double expect = (t1 - t2) * (std::exp(t1) - std::exp(t2));
      CHECK(jeffreys_symmetrized_bregman(F, Vector{t1}, Vector{t2}).value() ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }
  // Worked value: t1=1, t2=0 gives e - 1.
  CHECK(jeffreys_symmetrized_bregman(F, Vector{1.0}, Vector{0.0}).value() ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("divergence values expose method and error metadata") {
  const auto v = duo_bregman(quad_pair(2.0), Vector{1.0}, Vector{0.5});
  CHECK(v.method() == Method::closed_form);
  CHECK_FALSE(v.is_infinite());
  CHECK(v.abs_error_estimate() >= 0.0);

  const auto inf = DivergenceValue::infinity(Method::closed_form);
  CHECK(inf.is_infinite());
  CHECK_THROWS_AS((void)inf.value(), std::logic_error);

  // nonnegative() clamps tiny negative roundoff to zero but keeps the error.
  const auto clamped = DivergenceValue::nonnegative(-1e-12, Method::oracle, 1e-12);
  CHECK(clamped.value() == 0.0);
  CHECK(clamped.abs_error_estimate() >= 1e-12);
}
