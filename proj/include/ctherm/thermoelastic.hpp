#pragma once

// Thermoelastic material point with state (eps, F, H): entropy form,
// potential-generated constitutive relations, the closeness system of the
// time-dependent form eta', and RK4 stepping with the Fourier closure.

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctherm/expr.hpp"
#include "ctherm/geometry.hpp"
#include "ctherm/material.hpp"

namespace ctherm::thermoelastic {

/// eps, F11..F33, H1..H3
const std::vector<std::string>& base_coordinates();

struct State {
  double eps = 1.0;
  Eigen::Matrix3d F = Eigen::Matrix3d::Identity();
  Eigen::Vector3d H = Eigen::Vector3d::Zero();

  static constexpr std::size_t kSize = 13;
  std::vector<double> to_vector() const;
  static State from_vector(std::span<const double> v);
};

struct Constitutive {
  expr::Expression U;  // over base_coordinates()
  double rho = 1.0;
  double k = 1.0;
};

/// Compiled constitutive data.
class Model {
 public:
  explicit Model(Constitutive c);

  const expr::ScalarField& potential() const noexcept { return U_; }
  double rho() const noexcept { return rho_; }
  double k() const noexcept { return k_; }

 private:
  expr::ScalarField U_;
  double rho_;
  double k_;
};

struct ConstitutiveValues {
  double theta_inv = 0.0;
  Eigen::Matrix3d stress_term;     // sigma F^-T = -rho theta dU/dF
  Eigen::Vector3d grad_theta_inv;  // -rho dU/dH
};

/// Throws material::TemperatureSingularity when dU/deps = 0.
ConstitutiveValues constitutive_from_potential(const Model& m, const State& x);

double potential_value(const Model& m, const State& x);

struct Forcing {
  material::TimeTensor L;
  material::TimeFunction divq;
};

/// Right-hand side: Fdot = L F, epsdot = rho^-1 A:Fdot - rho^-1 divq with
/// A = -rho theta dU/dF, Hdot = (rho/k) dU/dH.
State rates(const Model& m, const Forcing& f, double t, const State& x);

/// One classical RK4 step. Throws material::DomainExit if det F <= 0 or the
/// potential leaves its domain at any stage.
State step(const Model& m, const Forcing& f, const State& x, double t, double dt);

/// Coefficient fields of eta over base_coordinates().
struct FormCoefficients {
  expr::Expression theta_inv;
  std::array<expr::Expression, 9> stress_term;
  std::array<expr::Expression, 3> grad_theta_inv;
};

/// theta^-1 deps - (theta rho)^-1 A:dF - rho^-1 grad(theta^-1).dH
geometry::OneForm entropy_form(const FormCoefficients& c, double rho);

/// Constitutive relations generated by a potential U(eps, F, H).
FormCoefficients potential_coefficients(const expr::Expression& U, double rho);

/// eps, F11..F33, beta1..beta3, t
const std::vector<std::string>& eta_prime_coordinates();

/// eta' = a deps - X:dF + c dt with a = theta^-1, X = sigma:F^-1 / theta,
/// c = q.beta, all over eta_prime_coordinates().
struct EtaPrimeCoefficients {
  expr::Expression a;
  std::array<expr::Expression, 9> X;
  expr::Expression c;
};

/// Gauge functions of t in the general solution; zero by default.
struct Gauge {
  expr::Expression c1;
  std::array<expr::Expression, 9> c2;
  expr::Expression c3;
};

/// a = U_eps + c1, X = -(U_F + c2), c = U_t + c2':F + c1' eps + c3 for a
/// potential U(eps, F, t).
EtaPrimeCoefficients gauge_coefficients(const expr::Expression& U, const Gauge& g = {});

struct ClosenessSystemResidual {
  /// Max-abs residuals, in order: d_F a + d_eps X, d_beta a, d_beta X,
  /// d_beta c, d_t X + d_F c, d_t a - d_eps c.
  std::array<double, 6> conditions{};
  /// max |d_{F_ij} X_kl - d_{F_kl} X_ij|
  double f_symmetry = 0.0;

  double max() const;
};

ClosenessSystemResidual closeness_system_residual(const EtaPrimeCoefficients& c, std::span<const double> x);
/// Componentwise max over the sample.
ClosenessSystemResidual closeness_system_residual(const EtaPrimeCoefficients& c,
                                                  const std::vector<std::vector<double>>& sample);

}  // namespace ctherm::thermoelastic
