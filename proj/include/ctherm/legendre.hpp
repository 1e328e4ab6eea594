#pragma once

// Legendre submanifolds generated by a potential, their Reeb-shifted
// constitutive surfaces, and the connection on the Gibbs bundle.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctherm/expr.hpp"
#include "ctherm/geometry.hpp"

namespace ctherm::legendre {

/// j(q) = (s = U(q); q; p = dU/dq). U is a field over the chart's q names.
class LegendreSurface {
 public:
  LegendreSurface(geometry::ContactChart chart, expr::Expression U);

  const geometry::ContactChart& chart() const noexcept { return chart_; }
  const expr::ScalarField& potential() const noexcept { return U_; }

 private:
  geometry::ContactChart chart_;
  expr::ScalarField U_;
};

/// Surface s = U + sigma, p = dU/dq: the Legendre surface of U moved along
/// the Reeb field by sigma.
class ConstitutiveSurface {
 public:
  ConstitutiveSurface(geometry::ContactChart chart, expr::Expression U, expr::Expression sigma);

  const geometry::ContactChart& chart() const noexcept { return chart_; }
  const expr::ScalarField& potential() const noexcept { return U_; }
  const expr::ScalarField& production() const noexcept { return sigma_; }
  /// U + sigma as a single compiled field.
  const expr::ScalarField& entropy() const noexcept { return S_; }
  LegendreSurface legendre() const { return LegendreSurface(chart_, U_.expression()); }

 private:
  geometry::ContactChart chart_;
  expr::ScalarField U_;
  expr::ScalarField sigma_;
  expr::ScalarField S_;
};

/// q values in chart order from a binding holding at least the q names.
std::vector<double> base_point(const geometry::ContactChart& chart, const expr::Binding& q);

geometry::PhasePoint legendre_embed(const LegendreSurface& L, const expr::Binding& q);
geometry::PhasePoint legendre_embed(const LegendreSurface& L, std::span<const double> q);

/// s = U(q) + sigma(q), i.e. reeb_flow(legendre_embed(U, q), sigma(q)) bit for bit.
geometry::PhasePoint surface_embed(const ConstitutiveSurface& S, const expr::Binding& q);
geometry::PhasePoint surface_embed(const ConstitutiveSurface& S, std::span<const double> q);

/// Components of the pulled-back contact form in the dq basis:
/// d(U + sigma)/dq - p. Computed from the compiled U + sigma field, so it is
/// an independent check of the identity j*theta = d sigma.
Eigen::VectorXd pullback_contact(const ConstitutiveSurface& S, const expr::Binding& q);
Eigen::VectorXd pullback_contact(const ConstitutiveSurface& S, std::span<const double> q);

/// Pullback of theta onto the Legendre surface; zero in exact arithmetic.
Eigen::VectorXd legendre_pullback(const LegendreSurface& L, std::span<const double> q);

/// Points on the Legendre surface of U above the path (sigma shift removed).
std::vector<geometry::PhasePoint> reversible_companion(const ConstitutiveSurface& S,
                                                       const std::vector<expr::Binding>& path);

/// Connection form ds - p_i(s, q) dq^i on the bundle (s, q) -> q.
class GibbsConnection {
 public:
  GibbsConnection(std::string s, std::vector<std::string> q, std::vector<expr::Expression> p);

  /// p_i = dU/dq^i for an s-independent U.
  static GibbsConnection exact(const expr::Expression& U, std::string s, std::vector<std::string> q);

  const std::vector<std::string>& coordinates() const noexcept { return coords_; }  // s, q...
  std::size_t n() const noexcept { return p_.size(); }
  const expr::ScalarField& coefficient(std::size_t i) const { return p_.at(i); }

 private:
  std::vector<std::string> coords_;
  std::vector<expr::ScalarField> p_;
};

/// Omega_ij = (p_{j,s} p_i - p_{i,s} p_j) + (p_{j,q^i} - p_{i,q^j}), the value
/// of the connection form on [X_i, X_j] for horizontal X_i = d/dq^i + p_i d/ds.
/// x is ordered (s, q...).
Eigen::MatrixXd connection_curvature(const GibbsConnection& c, std::span<const double> x);
Eigen::MatrixXd connection_curvature(const GibbsConnection& c, const expr::Binding& x);

}  // namespace ctherm::legendre
