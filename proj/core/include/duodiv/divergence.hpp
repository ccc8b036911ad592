#pragma once

//! Bregman, Fenchel-Young and Jensen divergences, classical and duo. A duo
//! form replaces the single generator by an ordered pair (majorant, minorant)
//! of generators satisfying pointwise dominance; the classical forms are the
//! exact special case majorant == minorant.

#include <optional>

#include "duodiv/generator.hpp"

namespace duodiv {

enum class Method { closed_form, oracle };

//! A divergence result: a finite value with an attached absolute error
//! estimate, or the +infinity sentinel (never a floating-point infinity that
//! could silently propagate through arithmetic).
class DivergenceValue {
 public:
  static DivergenceValue finite(double value, Method method, double abs_error_estimate = 0.0) {
    return DivergenceValue(value, false, method, abs_error_estimate);
  }

  //! Like finite(), but clamps roundoff-level negatives (value in [-1e-10, 0))
  //! to 0, folding the clamped magnitude into the error estimate. Used by
  //! operations whose dominance/validity preconditions guarantee nonnegativity.
  static DivergenceValue nonnegative(double value, Method method,
                                     double abs_error_estimate = 0.0) {
    if (value < 0.0 && value >= -1e-10)
      return DivergenceValue(0.0, false, method, abs_error_estimate - value);
    return DivergenceValue(value, false, method, abs_error_estimate);
  }

  static DivergenceValue infinity(Method method) {
    return DivergenceValue(0.0, true, method, 0.0);
  }

  bool is_infinite() const { return infinite_; }
  //! Finite value; throws std::logic_error on the +infinity sentinel so that
  //! callers are forced to branch on is_infinite() instead of doing
  //! arithmetic with infinities.
  double value() const {
    if (infinite_) throw std::logic_error("DivergenceValue: value() on +infinity sentinel");
    return value_;
  }
  Method method() const { return method_; }
  double abs_error_estimate() const { return abs_error_estimate_; }

 private:
  DivergenceValue(double v, bool inf_flag, Method m, double err)
      : value_(v), infinite_(inf_flag), method_(m), abs_error_estimate_(err) {}

  double value_;
  bool infinite_;
  Method method_;
  double abs_error_estimate_;
};

struct DuoOptions {
  bool enforce_dominance = true;
  DominanceOptions dominance{};
};

//! Validated ordered pair majorant >= minorant (pointwise on the shared
//! domain). checked() raises DominanceError when the sampled dominance scan
//! fails; unchecked() skips the guard, for deliberately exploring duo forms
//! without nonnegativity (their values may then be negative, which the
//! divergence constructors leave unclamped).
class DuoPair {
 public:
  static DuoPair checked(ConvexGenerator majorant, ConvexGenerator minorant,
                         const DominanceOptions& opts = {});
  static DuoPair unchecked(ConvexGenerator majorant, ConvexGenerator minorant);

  const ConvexGenerator& majorant() const { return majorant_; }
  const ConvexGenerator& minorant() const { return minorant_; }
  bool dominance_verified() const { return verified_; }

 private:
  DuoPair(ConvexGenerator upper, ConvexGenerator lower, bool verified);

  ConvexGenerator majorant_;
  ConvexGenerator minorant_;
  bool verified_;
};

// ---- Bregman ----------------------------------------------------------------

//! B_F(theta1 : theta2) = F(theta1) - F(theta2) - <theta1 - theta2, grad F(theta2)>.
DivergenceValue bregman(const ConvexGenerator& F, const Vector& theta1, const Vector& theta2);

//! B_{F1,F2}(theta : theta') = F1(theta) - F2(theta') - <theta - theta', grad F2(theta')>,
//! with F1 the majorant and F2 the minorant.
DivergenceValue duo_bregman(const DuoPair& pair, const Vector& theta, const Vector& theta_prime);
DivergenceValue duo_bregman(const ConvexGenerator& F1, const ConvexGenerator& F2,
                            const Vector& theta, const Vector& theta_prime,
                            const DuoOptions& opts = {});

//! Dual-coordinate evaluation of the same quantity:
//! B_{F2*,F1*}(eta' : eta) = F2*(eta') - F1*(eta) - <eta' - eta, grad F1*(eta)>.
//! Equal to duo_bregman at eta = grad F1(theta), eta' = grad F2(theta').
DivergenceValue dual_duo_bregman(const DuoPair& pair, const Vector& eta_prime, const Vector& eta);
DivergenceValue dual_duo_bregman(const ConvexGenerator& F1, const ConvexGenerator& F2,
                                 const Vector& eta_prime, const Vector& eta,
                                 const DuoOptions& opts = {});

// ---- Fenchel-Young ------------------------------------------------------------

//! Y_{F1,F2*}(theta, eta') = F1(theta) + F2*(eta') - <theta, eta'>. The second
//! argument generator is the *dual* side: pass the conjugate generator of the
//! minorant (or any generator G = F2*; dominance is then checked between F1
//! and G*).
DivergenceValue duo_fenchel_young(const ConvexGenerator& F1, const ConvexGenerator& F2_dual,
                                  const Vector& theta, const Vector& eta_prime,
                                  const DuoOptions& opts = {});
DivergenceValue duo_fenchel_young(const DuoPair& pair, const Vector& theta,
                                  const Vector& eta_prime);

//! Classical Fenchel-Young Y_{F,F*}(theta, eta').
DivergenceValue fenchel_young(const ConvexGenerator& F, const Vector& theta,
                              const Vector& eta_prime);

// ---- Jensen / skew gaps --------------------------------------------------------

//! J_{F,alpha}(theta1 : theta2)
//!   = alpha F(theta1) + (1-alpha) F(theta2) - F(alpha theta1 + (1-alpha) theta2),
//! alpha in (0,1). Throws AlphaError outside.
DivergenceValue jensen(const ConvexGenerator& F, const Vector& theta1, const Vector& theta2,
                       double alpha);

//! J_{F1,F2,alpha}(theta1 : theta2)
//!   = alpha F1(theta1) + (1-alpha) F2(theta2) - F1(alpha theta1 + (1-alpha) theta2).
//! Dominance requirement is F2 >= F1 (the mixture is measured under the
//! smaller generator), i.e. pair.majorant() = F2, pair.minorant() = F1.
DivergenceValue duo_jensen(const ConvexGenerator& F1, const ConvexGenerator& F2,
                           const Vector& theta1, const Vector& theta2, double alpha,
                           const DuoOptions& opts = {});
DivergenceValue duo_jensen(const DuoPair& pair, const Vector& theta1, const Vector& theta2,
                           double alpha);

// ---- symmetrizations -----------------------------------------------------------

//! B_{F1,F2}(theta1 : theta2) + B_{F1,F2}(theta2 : theta1); expands to
//! <theta1-theta2, grad F2(theta1)-grad F2(theta2)>
//!   + (F1-F2)(theta1) + (F1-F2)(theta2).
DivergenceValue symmetrized_duo_bregman(const DuoPair& pair, const Vector& theta1,
                                        const Vector& theta2);
DivergenceValue symmetrized_duo_bregman(const ConvexGenerator& F1, const ConvexGenerator& F2,
                                        const Vector& theta1, const Vector& theta2,
                                        const DuoOptions& opts = {});

//! Jeffreys-symmetrized classical Bregman
//! S_F(theta1, theta2) = <theta2 - theta1, grad F(theta2) - grad F(theta1)>.
DivergenceValue jeffreys_symmetrized_bregman(const ConvexGenerator& F, const Vector& theta1,
                                             const Vector& theta2);

}  // namespace duodiv
