#include "duodiv/centroids.hpp"

#include "duodiv/errors.hpp"

namespace duodiv {

namespace {

void require_points(const CentroidProblem& prob) {
  if (prob.points.empty()) throw ParamError("centroid: point set must be nonempty");
  for (const Vector& p : prob.points) {
    if (!prob.pair.majorant().in_domain(p) || !prob.pair.minorant().in_domain(p))
      throw DomainError("centroid: point outside the shared generator domain");
  }
}

}  // namespace

Vector right_centroid(const CentroidProblem& prob) {
  require_points(prob);
  const int dim = prob.pair.majorant().dim();
  Vector mean(dim, 0.0);
  for (const Vector& p : prob.points) mean = add(mean, p);
  return scale(1.0 / static_cast<double>(prob.points.size()), mean);
}

Vector left_centroid(const CentroidProblem& prob, const SolveOptions& opts) {
  require_points(prob);
  const int dim = prob.pair.majorant().dim();
  Vector eta_bar(dim, 0.0);
  for (const Vector& p : prob.points) eta_bar = add(eta_bar, prob.pair.minorant().gradient(p));
  eta_bar = scale(1.0 / static_cast<double>(prob.points.size()), eta_bar);
  return grad_conjugate(prob.pair.majorant(), eta_bar, opts);
}

Vector centroid(const CentroidProblem& prob, const SolveOptions& opts) {
  return prob.side == CentroidSide::right ? right_centroid(prob) : left_centroid(prob, opts);
}

double centroid_objective(const CentroidProblem& prob, const Vector& theta) {
  require_points(prob);
  double total = 0.0;
  for (const Vector& p : prob.points) {
    const DivergenceValue d = prob.side == CentroidSide::right ? duo_bregman(prob.pair, p, theta)
                                                               : duo_bregman(prob.pair, theta, p);
    total += d.value();
  }
  return total / static_cast<double>(prob.points.size());
}

}  // namespace duodiv
