#pragma once

//! Left- and right-sided centroids of a point set under the duo tangent-gap
//! divergence B_{F1,F2}. The right centroid (variable in the second slot) is
//! the center of mass; the left centroid solves
//! grad F1(theta) = mean_i grad F2(theta_i) through the gradient-inversion
//! machinery of the generators module.

#include <vector>

#include "duodiv/divergence.hpp"
#include "duodiv/generator.hpp"

namespace duodiv {

enum class CentroidSide { left, right };

struct CentroidProblem {
  DuoPair pair;  // majorant F1, minorant F2 of B_{F1,F2}
  std::vector<Vector> points;
  CentroidSide side = CentroidSide::right;
};

//! argmin_theta (1/n) sum_i B_{F1,F2}(theta_i : theta) = (1/n) sum_i theta_i.
//! ParamError on an empty point set; DomainError if any point is outside the
//! shared domain.
Vector right_centroid(const CentroidProblem& prob);

//! argmin_theta (1/n) sum_i B_{F1,F2}(theta : theta_i)
//!   = (grad F1)^{-1}((1/n) sum_i grad F2(theta_i)).
//! With F1 = F2 separable this is the quasi-arithmetic mean. DomainError when
//! the mean gradient lies outside grad F1's range; ConvergenceError from the
//! numeric inversion.
Vector left_centroid(const CentroidProblem& prob, const SolveOptions& opts = {});

//! Dispatch on prob.side.
Vector centroid(const CentroidProblem& prob, const SolveOptions& opts = {});

//! The minimized objective: mean duo divergence with `theta` in the slot
//! selected by prob.side. Used by the perturbation-minimality tests.
double centroid_objective(const CentroidProblem& prob, const Vector& theta);

}  // namespace duodiv
