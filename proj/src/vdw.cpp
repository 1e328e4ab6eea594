#include "ctherm/vdw.hpp"

#include <stdexcept>

#include "ctherm/processes.hpp"

namespace ctherm::vdw {

using expr::Expression;

expr::Expression potential(const Params& p) {
  if (!(p.cV > 0) || !(p.R > 0)) throw std::invalid_argument("vdw: R and c_V must be positive");
  const Expression S = Expression::variable("S");
  const Expression V = Expression::variable("V");
  const double e = (p.as_printed ? p.R : -p.R) / p.cV;
  return expr::pow(V - Expression::constant(p.b), Expression::constant(e)) * expr::exp(S / Expression::constant(p.cV)) -
         Expression::constant(p.a) / V;
}

legendre::LegendreSurface surface(const Params& p) {
  return legendre::LegendreSurface(geometry::ContactChart("s", {"S", "V"}, {"T", "minus_p"}), potential(p));
}

Point evaluate(const Params& p, double S, double V) {
  const auto L = surface(p);
  const std::vector<double> q{S, V};
  const auto x = legendre::legendre_embed(L, q);
  Point out;
  out.S = S;
  out.V = V;
  out.U = x.s();
  out.T = x.p(L.chart(), 0);
  out.p = -x.p(L.chart(), 1);
  out.det = processes::godograph_det(L.potential(), q).det;
  return out;
}

std::vector<double> spinodal(const Params& p, double S, double V_lo, double V_hi, std::size_t samples, double xtol) {
  const auto L = surface(p);
  return processes::sign_changes(
      [&](double V) {
        const std::vector<double> q{S, V};
        return processes::godograph_det(L.potential(), q).det;
      },
      V_lo, V_hi, samples, xtol);
}

}  // namespace ctherm::vdw
