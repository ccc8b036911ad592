#pragma once

//! Strictly convex, differentiable generators F: Theta -> R on open coordinate
//! boxes, with Legendre-Fenchel conjugation (closed form when registered,
//! safeguarded Newton otherwise) and a pointwise-dominance checker.
//!
//! Generators are immutable value types; all evaluation is const and
//! thread-safe.

#include <functional>
#include <optional>
#include <string>

#include "duodiv/errors.hpp"
#include "duodiv/interval.hpp"
#include "duodiv/linalg.hpp"

namespace duodiv {

enum class ConjugateMode { closed_form, numeric };

struct SolveOptions {
  double tol = 1e-10;  // residual tolerance on |grad F(theta) - eta|
  int max_iter = 200;
};

struct DominanceOptions {
  int samples = 256;    // low-discrepancy sample count
  double bound = 10.0;  // clip unbounded coordinates to [-bound, bound]
  double tol = 1e-12;   // accept F1 >= F2 - tol
};

class ConvexGenerator {
 public:
  using EvalFn = std::function<double(const Vector&)>;
  using GradFn = std::function<Vector(const Vector&)>;

  ConvexGenerator(std::string name, Box domain, EvalFn eval, GradFn grad);

  //! Register a closed-form conjugate F* with its domain (the gradient range
  //! of F). grad_conj, when given, must be the inverse gradient eta -> theta.
  ConvexGenerator& with_conjugate(Box dual_domain, EvalFn conj_eval, GradFn conj_grad = nullptr);

  //! Register a starting-point hint eta -> theta for numeric gradient
  //! inversion. The hint may throw DomainError for provably infeasible eta.
  ConvexGenerator& with_conjugate_seed(GradFn seed);
  const GradFn& conjugate_seed() const { return seed_; }

  const std::string& name() const { return name_; }
  int dim() const { return domain_.dim(); }
  const Box& domain() const { return domain_; }
  ConjugateMode conjugate_mode() const {
    return conj_eval_ ? ConjugateMode::closed_form : ConjugateMode::numeric;
  }
  //! Gradient range of F when known in closed form (= domain of F*).
  const std::optional<Box>& dual_domain() const { return dual_domain_; }

  bool in_domain(const Vector& theta) const { return domain_.contains(theta); }

  //! F(theta). Throws DomainError outside the open domain.
  double value(const Vector& theta) const;
  //! grad F(theta). Throws DomainError outside the open domain.
  Vector gradient(const Vector& theta) const;

  // 1-D sugar.
  double value(double theta) const { return value(Vector{theta}); }
  double gradient1(double theta) const { return gradient(Vector{theta})[0]; }

  // Closed-form conjugate plumbing (used by legendre_conjugate).
  bool has_closed_conjugate() const { return static_cast<bool>(conj_eval_); }
  double conjugate_value(const Vector& eta) const;
  bool has_closed_conjugate_gradient() const { return static_cast<bool>(conj_grad_); }
  Vector conjugate_gradient(const Vector& eta) const;

 private:
  std::string name_;
  Box domain_;
  EvalFn eval_;
  GradFn grad_;
  std::optional<Box> dual_domain_;
  EvalFn conj_eval_;
  GradFn conj_grad_;
  GradFn seed_;
};

//! F*(eta) = sup_theta { <theta, eta> - F(theta) }. Uses the registered
//! closed form when present, otherwise solves grad F(theta) = eta with
//! safeguarded Newton (1-D: bisection fallback; n-D: damped steps with a
//! finite-difference Jacobian). Throws DomainError when eta lies outside the
//! open gradient range and ConvergenceError when the solve stalls.
double legendre_conjugate(const ConvexGenerator& F, const Vector& eta,
                          const SolveOptions& opts = {});
double legendre_conjugate(const ConvexGenerator& F, double eta, const SolveOptions& opts = {});

//! Same as legendre_conjugate but never consults the registered closed form.
double legendre_conjugate_numeric(const ConvexGenerator& F, const Vector& eta,
                                  const SolveOptions& opts = {});

//! grad F*(eta) = (grad F)^{-1}(eta), the maximizer of <theta,eta> - F(theta).
Vector grad_conjugate(const ConvexGenerator& F, const Vector& eta, const SolveOptions& opts = {});

//! The conjugate as a generator in its own right. Its registered conjugate is
//! F itself (F** = F for the closed proper convex generators handled here),
//! so conjugating twice is exact. When F has no closed-form conjugate the
//! returned generator evaluates by numeric solves; its domain falls back to
//! an unrestricted box of the same dimension with feasibility decided by the
//! solver.
ConvexGenerator conjugate_generator(const ConvexGenerator& F);

struct ConjugatePair {
  ConvexGenerator primal;
  ConvexGenerator dual;
};

ConjugatePair make_conjugate_pair(const ConvexGenerator& F);

//! Pointwise dominance F1 >= F2 - tol sampled on a deterministic Halton grid
//! over the intersection of the domains (clipped to [-bound, bound] on
//! unbounded coordinates). Throws DomainError when the intersection is empty.
bool check_dominance(const ConvexGenerator& F1, const ConvexGenerator& F2,
                     const DominanceOptions& opts = {});

//! Halton point in (0,1)^dim, index n >= 1 (bases 2, 3, 5, ...).
Vector halton_point(int n, int dim);

// ---- generator catalog ------------------------------------------------------
// Log-normalizers and the polynomial pairs used for dominance studies.
namespace gen {

//! (a/2) theta^2 on R; conjugate eta^2/(2a) on R.
ConvexGenerator quadratic(double a);

//! theta^2 on (lo, hi) in (0,1]-style windows; conjugate eta^2/4 on the
//! gradient range (2*lo, 2*hi).
ConvexGenerator square(Interval domain = {0.0, 1.0});

//! theta^4 on (lo, hi); conjugate (3/4^{4/3}) eta^{4/3} on (4*lo^3, 4*hi^3).
ConvexGenerator fourth_power(Interval domain = {0.0, 1.0});

//! exp(theta) on R (Poisson log-normalizer); conjugate eta log eta - eta.
ConvexGenerator exp_of();

//! -log(1 - exp(theta)) on (-inf, 0) (geometric log-normalizer);
//! conjugate eta log eta - (1+eta) log(1+eta).
ConvexGenerator log_geometric();

//! -log(theta) + shift on (0, inf); shift 0 gives the exponential family's
//! log-normalizer, shift log 2 the Laplacian's. Conjugate
//! -1 - log(-eta) - shift on (-inf, 0).
ConvexGenerator neg_log(double shift = 0.0, std::string name = "neg_log");

//! -k log(theta) + shift on (0, inf); k = 1/2 with shift (1/2)log(pi/2) gives
//! the half-normal log-normalizer, shift (1/2)log(2 pi) the zero-centered
//! normal scale family. Conjugate -k + k log(-k/eta) - shift on (-inf, 0).
ConvexGenerator scaled_neg_log(double k, double shift, std::string name = "scaled_neg_log");

}  // namespace gen

}  // namespace duodiv
