#include "duodiv/divergence.hpp"

#include <cmath>
#include <utility>

namespace duodiv {

DuoPair::DuoPair(ConvexGenerator upper, ConvexGenerator lower, bool verified)
    : majorant_(std::move(upper)), minorant_(std::move(lower)), verified_(verified) {}

DuoPair DuoPair::checked(ConvexGenerator majorant, ConvexGenerator minorant,
                         const DominanceOptions& opts) {
  if (!check_dominance(majorant, minorant, opts))
    throw DominanceError("duo pair: " + majorant.name() + " does not dominate " +
                         minorant.name() + " on the shared domain");
  return DuoPair(std::move(majorant), std::move(minorant), true);
}

DuoPair DuoPair::unchecked(ConvexGenerator majorant, ConvexGenerator minorant) {
  return DuoPair(std::move(majorant), std::move(minorant), false);
}

namespace {

DuoPair make_pair(const ConvexGenerator& upper, const ConvexGenerator& lower,
                  const DuoOptions& opts) {
  return opts.enforce_dominance ? DuoPair::checked(upper, lower, opts.dominance)
                                : DuoPair::unchecked(upper, lower);
}

DivergenceValue wrap(double v, bool nonneg_guaranteed) {
  return nonneg_guaranteed ? DivergenceValue::nonnegative(v, Method::closed_form)
                           : DivergenceValue::finite(v, Method::closed_form);
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaError("skew parameter must lie in (0,1)");
}

}  // namespace

// ---- Bregman ----------------------------------------------------------------

namespace {

// Shared arithmetic for classical and duo forms: the classical call passes the
// same generator twice, making the reduction exact by construction.
double duo_bregman_raw(const ConvexGenerator& F1, const ConvexGenerator& F2, const Vector& theta,
                       const Vector& theta_prime) {
  return F1.value(theta) - F2.value(theta_prime) -
         dot(sub(theta, theta_prime), F2.gradient(theta_prime));
}

double duo_jensen_raw(const ConvexGenerator& F1, const ConvexGenerator& F2, const Vector& theta1,
                      const Vector& theta2, double alpha) {
  return alpha * F1.value(theta1) + (1.0 - alpha) * F2.value(theta2) -
         F1.value(mix(alpha, theta1, theta2));
}

}  // namespace

DivergenceValue bregman(const ConvexGenerator& F, const Vector& theta1, const Vector& theta2) {
  return wrap(duo_bregman_raw(F, F, theta1, theta2), /*nonneg=*/true);
}

DivergenceValue duo_bregman(const DuoPair& pair, const Vector& theta, const Vector& theta_prime) {
  return wrap(duo_bregman_raw(pair.majorant(), pair.minorant(), theta, theta_prime),
              pair.dominance_verified());
}

DivergenceValue duo_bregman(const ConvexGenerator& F1, const ConvexGenerator& F2,
                            const Vector& theta, const Vector& theta_prime,
                            const DuoOptions& opts) {
  return duo_bregman(make_pair(F1, F2, opts), theta, theta_prime);
}

DivergenceValue dual_duo_bregman(const DuoPair& pair, const Vector& eta_prime,
                                 const Vector& eta) {
  const double f2_star = legendre_conjugate(pair.minorant(), eta_prime);
  const double f1_star = legendre_conjugate(pair.majorant(), eta);
  const Vector theta = grad_conjugate(pair.majorant(), eta);
  const double v = f2_star - f1_star - dot(sub(eta_prime, eta), theta);
  return wrap(v, pair.dominance_verified());
}

DivergenceValue dual_duo_bregman(const ConvexGenerator& F1, const ConvexGenerator& F2,
                                 const Vector& eta_prime, const Vector& eta,
                                 const DuoOptions& opts) {
  return dual_duo_bregman(make_pair(F1, F2, opts), eta_prime, eta);
}

// ---- Fenchel-Young ------------------------------------------------------------

DivergenceValue duo_fenchel_young(const DuoPair& pair, const Vector& theta,
                                  const Vector& eta_prime) {
  const double v = pair.majorant().value(theta) + legendre_conjugate(pair.minorant(), eta_prime) -
                   dot(theta, eta_prime);
  return wrap(v, pair.dominance_verified());
}

DivergenceValue duo_fenchel_young(const ConvexGenerator& F1, const ConvexGenerator& F2_dual,
                                  const Vector& theta, const Vector& eta_prime,
                                  const DuoOptions& opts) {
  // The dominance precondition lives on the primal side: F1 >= (F2_dual)*.
  const ConvexGenerator F2 = conjugate_generator(F2_dual);
  if (opts.enforce_dominance && !check_dominance(F1, F2, opts.dominance))
    throw DominanceError("duo_fenchel_young: " + F1.name() + " does not dominate " + F2.name());
  const double v = F1.value(theta) + F2_dual.value(eta_prime) - dot(theta, eta_prime);
  return opts.enforce_dominance ? DivergenceValue::nonnegative(v, Method::closed_form)
                                : DivergenceValue::finite(v, Method::closed_form);
}

DivergenceValue fenchel_young(const ConvexGenerator& F, const Vector& theta,
                              const Vector& eta_prime) {
  const double v = F.value(theta) + legendre_conjugate(F, eta_prime) - dot(theta, eta_prime);
  return DivergenceValue::nonnegative(v, Method::closed_form);
}

// ---- Jensen ---------------------------------------------------------------------

DivergenceValue jensen(const ConvexGenerator& F, const Vector& theta1, const Vector& theta2,
                       double alpha) {
  require_alpha(alpha);
  return wrap(duo_jensen_raw(F, F, theta1, theta2, alpha), /*nonneg=*/true);
}

DivergenceValue duo_jensen(const DuoPair& pair, const Vector& theta1, const Vector& theta2,
                           double alpha) {
  require_alpha(alpha);
  // Mixture falls under the minorant: J_{F1,F2,alpha} with F2 = majorant.
  return wrap(duo_jensen_raw(pair.minorant(), pair.majorant(), theta1, theta2, alpha),
              pair.dominance_verified());
}

DivergenceValue duo_jensen(const ConvexGenerator& F1, const ConvexGenerator& F2,
                           const Vector& theta1, const Vector& theta2, double alpha,
                           const DuoOptions& opts) {
  return duo_jensen(make_pair(F2, F1, opts), theta1, theta2, alpha);
}

// ---- symmetrizations ---------------------------------------------------------------

DivergenceValue symmetrized_duo_bregman(const DuoPair& pair, const Vector& theta1,
                                        const Vector& theta2) {
  const double v = duo_bregman_raw(pair.majorant(), pair.minorant(), theta1, theta2) +
                   duo_bregman_raw(pair.majorant(), pair.minorant(), theta2, theta1);
  return wrap(v, pair.dominance_verified());
}

DivergenceValue symmetrized_duo_bregman(const ConvexGenerator& F1, const ConvexGenerator& F2,
                                        const Vector& theta1, const Vector& theta2,
                                        const DuoOptions& opts) {
  return symmetrized_duo_bregman(make_pair(F1, F2, opts), theta1, theta2);
}

DivergenceValue jeffreys_symmetrized_bregman(const ConvexGenerator& F, const Vector& theta1,
                                             const Vector& theta2) {
  const double v = dot(sub(theta2, theta1), sub(F.gradient(theta2), F.gradient(theta1)));
  return DivergenceValue::nonnegative(v, Method::closed_form);
}

}  // namespace duodiv
