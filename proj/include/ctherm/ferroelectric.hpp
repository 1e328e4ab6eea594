#pragma once

// Deformable ferroelectric material point: polarization pi per unit mass,
// its gradient, and their rates u, grad u on top of the thermoelastic state.

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctherm/expr.hpp"
#include "ctherm/geometry.hpp"
#include "ctherm/material.hpp"

namespace ctherm::ferroelectric {

/// Potential coordinates: eps, F11..F33, pi1..pi3, gpi11..gpi33, H1..H3.
const std::vector<std::string>& base_coordinates();
/// base_coordinates() followed by t.
const std::vector<std::string>& extended_coordinates();

/// Dynamic state, flattened as eps, F, H, pi, gpi, u, gu (37 values).
struct State {
  double eps = 1.0;
  Eigen::Matrix3d F = Eigen::Matrix3d::Identity();
  Eigen::Vector3d H = Eigen::Vector3d::Zero();
  Eigen::Vector3d pi = Eigen::Vector3d::Zero();
  Eigen::Matrix3d gpi = Eigen::Matrix3d::Zero();
  Eigen::Vector3d u = Eigen::Vector3d::Zero();
  Eigen::Matrix3d gu = Eigen::Matrix3d::Zero();

  static constexpr std::size_t kSize = 37;
  std::vector<double> to_vector() const;
  static State from_vector(std::span<const double> v);
  /// Point in extended_coordinates() order.
  std::vector<double> potential_point(double t) const;
};

/// State variable names in to_vector() order.
const std::vector<std::string>& state_names();

struct Constitutive {
  expr::Expression U;  // over extended_coordinates(); t is optional
  double rho = 1.0;
  double k = 1.0;
  double inertia = 1.0;
};

class Model {
 public:
  explicit Model(Constitutive c);

  const expr::ScalarField& potential() const noexcept { return U_; }
  double rho() const noexcept { return rho_; }
  double k() const noexcept { return k_; }
  double inertia() const noexcept { return inertia_; }

 private:
  expr::ScalarField U_;
  double rho_;
  double k_;
  double inertia_;
};

struct ConstitutiveValues {
  double theta_inv = 0.0;
  Eigen::Matrix3d stress_term;  // -rho theta dU/dF
  Eigen::Vector3d E_loc;        // theta dU/dpi
  Eigen::Matrix3d E_tensor;     // -rho theta dU/dgpi
  Eigen::Vector3d beta;         // dU/dH
};

/// Throws material::TemperatureSingularity when dU/deps = 0.
ConstitutiveValues constitutive_from_potential(const Model& m, const State& x, double t = 0.0);

double potential_value(const Model& m, const State& x, double t = 0.0);

/// Time-dependent inputs. Spatial divergences that a point model cannot
/// compute are given directly as channels; all default to zero.
struct Forcing {
  material::TimeVector E_ext;        // external electric field
  material::TimeTensor L;            // velocity gradient
  material::TimeFunction divq;       // div q
  material::TimeFunction poynting;   // added to epsdot as given
  material::TimeVector div_E_tensor; // div of the local field tensor
  material::TimeTensor div_J;        // div of the grad-u current
  material::TimeTensor source;       // grad-u source
};

State rates(const Model& m, const Forcing& f, double t, const State& x);

/// One classical RK4 step; throws material::DomainExit as the thermoelastic
/// stepper does.
State step(const Model& m, const Forcing& f, const State& x, double t, double dt);

/// Coefficient fields of the entropy form, over extended_coordinates().
struct FormCoefficients {
  expr::Expression theta_inv;
  std::array<expr::Expression, 9> stress_term;
  std::array<expr::Expression, 3> E_loc;
  std::array<expr::Expression, 9> E_tensor;
  std::array<expr::Expression, 3> beta;
  expr::Expression div_P;  // div of the Poynting vector
  expr::Expression div_k;  // div of the extra entropy flux
};

/// theta^-1 deps - (rho theta)^-1 A:dF + theta^-1 E_loc.dpi
/// - (rho theta)^-1 E_tensor:dgpi + beta.dH - rho^-1 (theta^-1 div P + div k) dt.
/// Without time the dt term is dropped and the form lives on base_coordinates().
geometry::OneForm entropy_form(const FormCoefficients& c, double rho, bool with_time = false);

/// Same form with the dt coefficient written through div(theta^-1 P) and P:
/// theta^-1 div P = div(theta^-1 P) + rho P.beta.
struct PoyntingInputs {
  std::array<expr::Expression, 3> P;
  expr::Expression div_theta_inv_P;
};
geometry::OneForm entropy_form(const FormCoefficients& c, double rho, const PoyntingInputs& alt);

/// Constitutive relations generated by a potential U; div_P and div_k are
/// left at zero.
FormCoefficients potential_coefficients(const expr::Expression& U, double rho);

}  // namespace ctherm::ferroelectric
