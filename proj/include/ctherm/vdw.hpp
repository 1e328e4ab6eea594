#pragma once

// Van der Waals fluid as a fundamental relation U(S, V) with constants
// a, b, R and c_V.

#include <vector>

#include "ctherm/expr.hpp"
#include "ctherm/legendre.hpp"

namespace ctherm::vdw {

struct Params {
  double a = 1.0;
  double b = 0.1;
  double R = 1.0;
  double cV = 1.5;
  /// Use (V - b)^(+R/c_V) instead of the standard (V - b)^(-R/c_V).
  bool as_printed = false;
};

/// (V - b)^(-R/c_V) exp(S/c_V) - a/V over coordinates S, V.
expr::Expression potential(const Params& p);

/// Chart s; S, V; T, minus_p.
legendre::LegendreSurface surface(const Params& p);

struct Point {
  double S = 0.0, V = 0.0;
  double U = 0.0;
  double T = 0.0;    // dU/dS
  double p = 0.0;    // -dU/dV
  double det = 0.0;  // det of the Hessian of U
};

Point evaluate(const Params& p, double S, double V);

/// Volumes on [V_lo, V_hi] where the Hessian determinant changes sign along
/// the isentrope S, located by scan and bisection to width xtol.
std::vector<double> spinodal(const Params& p, double S, double V_lo, double V_hi, std::size_t samples = 2000,
                             double xtol = 1e-10);

}  // namespace ctherm::vdw
