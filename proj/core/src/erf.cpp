#include "duodiv/truncnorm.hpp"

#include <cmath>

// Rational Chebyshev approximations for erf/erfc after W. J. Cody,
// Math. Comp. 23 (1969) 631-638: three regimes (|x| <= 0.46875 for erf
// directly, up to 4 and beyond for erfc), good to ~18 significant digits.
// exp(-x^2) is evaluated as exp(-y16^2)*exp(-(x-y16)(x+y16)) with y16 = x
// rounded to 1/16 so the argument reduction does not cost tail accuracy.

namespace duodiv {

namespace {

constexpr double kA[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                          3.77485237685302021e2, 3.20937758913846947e3,
                          1.85777706184603153e-1};
constexpr double kB[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                          1.28261652607737228e3, 2.84423683343917062e3};
constexpr double kC[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                          6.61191906371416295e1,  2.98635138197400131e2,
                          8.81952221241769090e2,  1.71204761263407058e3,
                          2.05107837782607147e3,  1.23033935479799725e3,
                          2.15311535474403846e-8};
constexpr double kD[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                          5.37181101862009858e2, 1.62138957456669019e3,
                          3.29079923573345963e3, 4.36261909014324716e3,
                          3.43936767414372164e3, 1.23033935480374942e3};
constexpr double kP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                          1.25781726111229246e-1, 1.60837851487422766e-2,
                          6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kQ[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                          5.27905102951428412e-1, 6.05183413124413191e-2,
                          2.33520497626869185e-3};

constexpr double kInvSqrtPi = 5.6418958354775628695e-1;
constexpr double kThresh = 0.46875;
constexpr double kXSmall = 1.11e-16;  // erf(x) = 2x/sqrt(pi) below this
constexpr double kXBig = 26.543;      // erfc underflows beyond this

// exp(-y^2) split so the rounding of y^2 cannot wipe out tail digits.
double exp_neg_sq(double y) {
  const double y16 = std::trunc(y * 16.0) / 16.0;
  const double del = (y - y16) * (y + y16);
  return std::exp(-y16 * y16) * std::exp(-del);
}

// erf on [-kThresh, kThresh]; odd in x (the rational factor depends on x^2).
double erf_small(double x) {
  const double y = std::fabs(x);
  const double ysq = y > kXSmall ? y * y : 0.0;
  double num = kA[4] * ysq;
  double den = ysq;
  for (int i = 0; i < 3; ++i) {
    num = (num + kA[i]) * ysq;
    den = (den + kB[i]) * ysq;
  }
  return x * (num + kA[3]) / (den + kB[3]);
}

// erfc on (kThresh, 4].
double erfc_mid(double y) {
  double num = kC[8] * y;
  double den = y;
  for (int i = 0; i < 7; ++i) {
    num = (num + kC[i]) * y;
    den = (den + kD[i]) * y;
  }
  return exp_neg_sq(y) * (num + kC[7]) / (den + kD[7]);
}

// erfc on (4, inf).
double erfc_large(double y) {
  if (y >= kXBig) return 0.0;
  const double z = 1.0 / (y * y);
  double num = kP[5] * z;
  double den = z;
  for (int i = 0; i < 4; ++i) {
    num = (num + kP[i]) * z;
    den = (den + kQ[i]) * z;
  }
  const double r = z * (num + kP[4]) / (den + kQ[4]);
  return exp_neg_sq(y) * (kInvSqrtPi - r) / y;
}

}  // namespace

double erf(double x) {
  const double y = std::fabs(x);
  if (y <= kThresh) return erf_small(x);
  const double c = y <= 4.0 ? erfc_mid(y) : erfc_large(y);
  const double r = (0.5 - c) + 0.5;
  return x < 0.0 ? -r : r;
}

double erfc(double x) {
  const double y = std::fabs(x);
  double r;
  if (y <= kThresh)
    r = 1.0 - erf_small(y);
  else if (y <= 4.0)
    r = erfc_mid(y);
  else
    r = erfc_large(y);
  return x < 0.0 ? 2.0 - r : r;
}

}  // namespace duodiv
