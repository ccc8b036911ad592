#include "duodiv/figures.hpp"

#include <fstream>

#include "duodiv/divergence.hpp"
#include "duodiv/errors.hpp"
#include "duodiv/generator.hpp"
#include "duodiv/specstring.hpp"

namespace duodiv {

std::string quadratic_surfaces_csv(int grid_per_axis) {
  if (grid_per_axis < 2) throw ParamError("quadratic_surfaces_csv: need at least a 2x2 grid");
  std::string csv = "a,theta,theta_prime,value\n";
  const ConvexGenerator minorant = gen::quadratic(1.0);
  for (const double a : {1.0, 2.0, 0.5}) {
    // a >= 1 keeps dominance over theta^2/2 and the surface nonnegative;
    // a = 0.5 reverses it, so only the unchecked pair can evaluate it.
    const DuoPair pair = a >= 1.0 ? DuoPair::checked(gen::quadratic(a), minorant)
                                  : DuoPair::unchecked(gen::quadratic(a), minorant);
    for (int i = 0; i < grid_per_axis; ++i) {
      const double theta = -1.0 + 2.0 * i / (grid_per_axis - 1);
      for (int j = 0; j < grid_per_axis; ++j) {
        const double theta_prime = -1.0 + 2.0 * j / (grid_per_axis - 1);
        const double v = duo_bregman(pair, Vector{theta}, Vector{theta_prime}).value();
        csv += format_double(a);
        csv += ',';
        csv += format_double(theta);
        csv += ',';
        csv += format_double(theta_prime);
        csv += ',';
        csv += format_double(v);
        csv += '\n';
      }
    }
  }
  return csv;
}

std::string conjugate_reversal_csv(int points_per_curve) {
  if (points_per_curve < 2) throw ParamError("conjugate_reversal_csv: need at least 2 points");
  std::string csv = "curve,x,value\n";
  const ConvexGenerator F1 = gen::square();
  const ConvexGenerator F2 = gen::fourth_power();
  auto emit = [&csv](const char* curve, double x, double v) {
    csv += curve;
    csv += ',';
    csv += format_double(x);
    csv += ',';
    csv += format_double(v);
    csv += '\n';
  };
  for (int i = 1; i <= points_per_curve; ++i) {
    const double theta = static_cast<double>(i) / (points_per_curve + 1);  // interior of (0,1)
    emit("F1", theta, F1.value(theta));
    emit("F2", theta, F2.value(theta));
  }
  for (int i = 1; i <= points_per_curve; ++i) {
    const double eta = 2.0 * i / (points_per_curve + 1);  // interior of (0,2)
    emit("F1_conj", eta, legendre_conjugate_numeric(F1, Vector{eta}));
    emit("F2_conj", eta, legendre_conjugate_numeric(F2, Vector{eta}));
  }
  return csv;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out.flush()) throw Error("failed writing '" + path + "'");
}

}  // namespace duodiv
