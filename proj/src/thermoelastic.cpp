#include "ctherm/thermoelastic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <fmt/format.h>

namespace ctherm::thermoelastic {

using expr::Expression;

const std::vector<std::string>& base_coordinates() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"eps"};
    for (auto& s : material::tensor_names("F")) n.push_back(s);
    for (auto& s : material::vector_names("H")) n.push_back(s);
    return n;
  }();
  return names;
}

std::vector<double> State::to_vector() const {
  std::vector<double> v(kSize);
  v[0] = eps;
  material::flatten(F, v.data() + 1);
  for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(10 + i)] = H(i);
  return v;
}

State State::from_vector(std::span<const double> v) {
  if (v.size() != kSize) throw std::invalid_argument(fmt::format("thermoelastic state needs {} values", kSize));
  State x;
  x.eps = v[0];
  x.F = material::unflatten(v.data() + 1);
  x.H = Eigen::Vector3d(v[10], v[11], v[12]);
  return x;
}

Model::Model(Constitutive c) : U_(std::move(c.U), base_coordinates()), rho_(c.rho), k_(c.k) {
  if (!(rho_ > 0)) throw std::invalid_argument("rho must be positive");
  if (!(k_ > 0)) throw std::invalid_argument("k must be positive");
}

namespace {

struct Gradient {
  double value;
  std::array<double, State::kSize> g;
  double u_eps() const { return g[0]; }
  Eigen::Matrix3d u_F() const { return material::unflatten(g.data() + 1); }
  Eigen::Vector3d u_H() const { return {g[10], g[11], g[12]}; }
};

Gradient potential_gradient(const Model& m, const State& x) {
  const auto v = x.to_vector();
  Gradient out{};
  out.value = m.potential().gradient(v, out.g);
  if (out.u_eps() == 0.0)
    throw material::TemperatureSingularity(
        fmt::format("dU/deps = 0 at eps = {}: temperature is undefined", x.eps));
  return out;
}

}  // namespace

ConstitutiveValues constitutive_from_potential(const Model& m, const State& x) {
  const Gradient g = potential_gradient(m, x);
  const double theta = 1.0 / g.u_eps();
  ConstitutiveValues out;
  out.theta_inv = g.u_eps();
  out.stress_term = -m.rho() * theta * g.u_F();
  out.grad_theta_inv = -m.rho() * g.u_H();
  return out;
}

double potential_value(const Model& m, const State& x) { return m.potential().value(x.to_vector()); }

State rates(const Model& m, const Forcing& f, double t, const State& x) {
  const Gradient g = potential_gradient(m, x);
  const double theta = 1.0 / g.u_eps();
  State dx;
  dx.F = material::evaluate(f.L, t) * x.F;
  // rho^-1 A:Fdot with A = -rho theta U_F
  dx.eps = -theta * (g.u_F().cwiseProduct(dx.F)).sum() - f.divq(t) / m.rho();
  dx.H = (m.rho() / m.k()) * g.u_H();
  return dx;
}

State step(const Model& m, const Forcing& f, const State& x, double t, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("step: dt must be positive");
  using Vec = std::vector<double>;
  auto system = [&](const Vec& y, Vec& dydt, double tau) {
    const State s = State::from_vector(y);
    if (!(s.F.determinant() > 0))
      throw material::DomainExit(fmt::format("det F = {} <= 0 at t = {}", s.F.determinant(), tau), t);
    dydt = rates(m, f, tau, s).to_vector();
  };
  Vec y = x.to_vector();
  try {
    boost::numeric::odeint::runge_kutta4<Vec> rk4;
    rk4.do_step(system, y, t, dt);
  } catch (const expr::DomainError& e) {
    throw material::DomainExit(e.what(), t);
  } catch (const material::TemperatureSingularity& e) {
    throw material::DomainExit(e.what(), t);
  }
  State out = State::from_vector(y);
  if (!(out.F.determinant() > 0))
    throw material::DomainExit(fmt::format("det F = {} <= 0 at t = {}", out.F.determinant(), t + dt), t);
  return out;
}

geometry::OneForm entropy_form(const FormCoefficients& c, double rho) {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  const Expression r = Expression::constant(rho);
  std::vector<Expression> coeffs;
  coeffs.push_back(c.theta_inv);
  for (const auto& a : c.stress_term) coeffs.push_back(-(c.theta_inv * a) / r);
  for (const auto& g : c.grad_theta_inv) coeffs.push_back(-g / r);
  return geometry::OneForm(base_coordinates(), std::move(coeffs));
}

FormCoefficients potential_coefficients(const Expression& U, double rho) {
  const auto& names = base_coordinates();
  const Expression minus_rho = Expression::constant(-rho);
  FormCoefficients c;
  c.theta_inv = expr::derivative(U, "eps");
  for (std::size_t i = 0; i < 9; ++i)
    c.stress_term[i] = minus_rho * expr::derivative(U, names[1 + i]) / c.theta_inv;
  for (std::size_t i = 0; i < 3; ++i) c.grad_theta_inv[i] = minus_rho * expr::derivative(U, names[10 + i]);
  return c;
}

const std::vector<std::string>& eta_prime_coordinates() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"eps"};
    for (auto& s : material::tensor_names("F")) n.push_back(s);
    for (auto& s : material::vector_names("beta")) n.push_back(s);
    n.push_back("t");
    return n;
  }();
  return names;
}

EtaPrimeCoefficients gauge_coefficients(const Expression& U, const Gauge& g) {
  const auto& names = eta_prime_coordinates();
  EtaPrimeCoefficients c;
  c.a = expr::derivative(U, "eps") + g.c1;
  Expression ct = expr::derivative(U, "t") + expr::derivative(g.c1, "t") * Expression::variable("eps") + g.c3;
  for (std::size_t i = 0; i < 9; ++i) {
    c.X[i] = -(expr::derivative(U, names[1 + i]) + g.c2[i]);
    ct = ct + expr::derivative(g.c2[i], "t") * Expression::variable(names[1 + i]);
  }
  c.c = ct;
  return c;
}

double ClosenessSystemResidual::max() const {
  return std::max(*std::max_element(conditions.begin(), conditions.end()), f_symmetry);
}

namespace {

constexpr std::size_t kEps = 0, kF = 1, kBeta = 10, kT = 13, kDim = 14;

struct CompiledEtaPrime {
  expr::ScalarField a;
  std::vector<expr::ScalarField> X;
  expr::ScalarField c;

  explicit CompiledEtaPrime(const EtaPrimeCoefficients& e)
      : a(e.a, eta_prime_coordinates()), c(e.c, eta_prime_coordinates()) {
    for (const auto& x : e.X) X.emplace_back(x, eta_prime_coordinates());
  }

  ClosenessSystemResidual at(std::span<const double> x) const {
    if (x.size() != kDim)
      throw std::invalid_argument(fmt::format("eta' point has {} coordinates, needs {}", x.size(), kDim));
    const Eigen::VectorXd ga = a.gradient(x);
    const Eigen::VectorXd gc = c.gradient(x);
    std::vector<Eigen::VectorXd> gX;
    for (const auto& f : X) gX.push_back(f.gradient(x));

    ClosenessSystemResidual r;
    auto& k = r.conditions;
    auto bump = [](double& slot, double v) { slot = std::max(slot, std::abs(v)); };
    for (std::size_t i = 0; i < 9; ++i) {
      bump(k[0], ga(kF + i) + gX[i](kEps));
      bump(k[4], gX[i](kT) + gc(kF + i));
      for (std::size_t b = 0; b < 3; ++b) bump(k[2], gX[i](kBeta + b));
      for (std::size_t j = i + 1; j < 9; ++j) bump(r.f_symmetry, gX[i](kF + j) - gX[j](kF + i));
    }
    for (std::size_t b = 0; b < 3; ++b) {
      bump(k[1], ga(kBeta + b));
      bump(k[3], gc(kBeta + b));
    }
    bump(k[5], ga(kT) - gc(kEps));
    return r;
  }
};

}  // namespace

ClosenessSystemResidual closeness_system_residual(const EtaPrimeCoefficients& c, std::span<const double> x) {
  return CompiledEtaPrime(c).at(x);
}

ClosenessSystemResidual closeness_system_residual(const EtaPrimeCoefficients& c,
                                                  const std::vector<std::vector<double>>& sample) {
  if (sample.empty()) throw std::invalid_argument("closeness_system_residual: empty sample");
  const CompiledEtaPrime compiled(c);
  ClosenessSystemResidual out;
  for (const auto& x : sample) {
    const auto r = compiled.at(x);
    for (std::size_t i = 0; i < 6; ++i) out.conditions[i] = std::max(out.conditions[i], r.conditions[i]);
    out.f_symmetry = std::max(out.f_symmetry, r.f_symmetry);
  }
  return out;
}

}  // namespace ctherm::thermoelastic
