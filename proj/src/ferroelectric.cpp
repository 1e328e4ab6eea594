#include "ctherm/ferroelectric.hpp"

#include <Eigen/LU>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <fmt/format.h>

namespace ctherm::ferroelectric {

using expr::Expression;

namespace {

// offsets into extended_coordinates()
constexpr std::size_t kEps = 0, kF = 1, kPi = 10, kGpi = 13, kH = 22, kT = 25, kExt = 26;

void append(std::vector<std::string>& out, const std::vector<std::string>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

Eigen::Vector3d vec3(const double* p) { return {p[0], p[1], p[2]}; }

void put3(const Eigen::Vector3d& v, double* p) {
  for (int i = 0; i < 3; ++i) p[i] = v(i);
}

}  // namespace

const std::vector<std::string>& base_coordinates() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"eps"};
    append(n, material::tensor_names("F"));
    append(n, material::vector_names("pi"));
    append(n, material::tensor_names("gpi"));
    append(n, material::vector_names("H"));
    return n;
  }();
  return names;
}

const std::vector<std::string>& extended_coordinates() {
  static const std::vector<std::string> names = [] {
    auto n = base_coordinates();
    n.push_back("t");
    return n;
  }();
  return names;
}

const std::vector<std::string>& state_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"eps"};
    append(n, material::tensor_names("F"));
    append(n, material::vector_names("H"));
    append(n, material::vector_names("pi"));
    append(n, material::tensor_names("gpi"));
    append(n, material::vector_names("u"));
    append(n, material::tensor_names("gu"));
    return n;
  }();
  return names;
}

std::vector<double> State::to_vector() const {
  std::vector<double> v(kSize);
  double* p = v.data();
  *p++ = eps;
  material::flatten(F, p);
  p += 9;
  put3(H, p);
  p += 3;
  put3(pi, p);
  p += 3;
  material::flatten(gpi, p);
  p += 9;
  put3(u, p);
  p += 3;
  material::flatten(gu, p);
  return v;
}

State State::from_vector(std::span<const double> v) {
  if (v.size() != kSize) throw std::invalid_argument(fmt::format("ferroelectric state needs {} values", kSize));
  State x;
  const double* p = v.data();
  x.eps = *p++;
  x.F = material::unflatten(p);
  p += 9;
  x.H = vec3(p);
  p += 3;
  x.pi = vec3(p);
  p += 3;
  x.gpi = material::unflatten(p);
  p += 9;
  x.u = vec3(p);
  p += 3;
  x.gu = material::unflatten(p);
  return x;
}

std::vector<double> State::potential_point(double t) const {
  std::vector<double> v(kExt);
  v[kEps] = eps;
  material::flatten(F, v.data() + kF);
  put3(pi, v.data() + kPi);
  material::flatten(gpi, v.data() + kGpi);
  put3(H, v.data() + kH);
  v[kT] = t;
  return v;
}

Model::Model(Constitutive c)
    : U_(std::move(c.U), extended_coordinates()), rho_(c.rho), k_(c.k), inertia_(c.inertia) {
  if (!(rho_ > 0)) throw std::invalid_argument("rho must be positive");
  if (!(k_ > 0)) throw std::invalid_argument("k must be positive");
  if (inertia_ == 0.0 || !std::isfinite(inertia_)) throw std::invalid_argument("inertia must be finite and nonzero");
}

namespace {

struct Gradient {
  std::array<double, kExt> g;
  double u_eps() const { return g[kEps]; }
  Eigen::Matrix3d u_F() const { return material::unflatten(g.data() + kF); }
  Eigen::Vector3d u_pi() const { return vec3(g.data() + kPi); }
  Eigen::Matrix3d u_gpi() const { return material::unflatten(g.data() + kGpi); }
  Eigen::Vector3d u_H() const { return vec3(g.data() + kH); }
};

Gradient potential_gradient(const Model& m, const State& x, double t) {
  Gradient out{};
  m.potential().gradient(x.potential_point(t), out.g);
  if (out.u_eps() == 0.0)
    throw material::TemperatureSingularity(
        fmt::format("dU/deps = 0 at eps = {}: temperature is undefined", x.eps));
  return out;
}

ConstitutiveValues from_gradient(const Model& m, const Gradient& g) {
  const double theta = 1.0 / g.u_eps();
  ConstitutiveValues c;
  c.theta_inv = g.u_eps();
  c.stress_term = -m.rho() * theta * g.u_F();
  c.E_loc = theta * g.u_pi();
  c.E_tensor = -m.rho() * theta * g.u_gpi();
  c.beta = g.u_H();
  return c;
}

}  // namespace

ConstitutiveValues constitutive_from_potential(const Model& m, const State& x, double t) {
  return from_gradient(m, potential_gradient(m, x, t));
}

double potential_value(const Model& m, const State& x, double t) {
  return m.potential().value(x.potential_point(t));
}

State rates(const Model& m, const Forcing& f, double t, const State& x) {
  const ConstitutiveValues c = from_gradient(m, potential_gradient(m, x, t));
  const double rho = m.rho();
  State d;
  d.F = material::evaluate(f.L, t) * x.F;
  // internal energy balance with the power of internal forces
  d.eps = (c.stress_term.cwiseProduct(d.F)).sum() / rho - c.E_loc.dot(x.u) +
          (c.E_tensor.cwiseProduct(x.gu)).sum() / rho - f.divq(t) / rho + f.poynting(t);
  d.H = (rho / m.k()) * c.beta;
  d.pi = x.u;
  d.u = (material::evaluate(f.E_ext, t) + c.E_loc + material::evaluate(f.div_E_tensor, t) / rho) / m.inertia();
  d.gpi = x.gu;
  d.gu = material::evaluate(f.div_J, t) + material::evaluate(f.source, t);
  return d;
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

namespace {

std::vector<Expression> spatial_coefficients(const FormCoefficients& c, double rho) {
  const Expression r = Expression::constant(rho);
  std::vector<Expression> out;
  out.push_back(c.theta_inv);
  for (const auto& a : c.stress_term) out.push_back(-(c.theta_inv * a) / r);
  for (const auto& e : c.E_loc) out.push_back(c.theta_inv * e);
  for (const auto& e : c.E_tensor) out.push_back(-(c.theta_inv * e) / r);
  for (const auto& b : c.beta) out.push_back(b);
  return out;
}

}  // namespace

geometry::OneForm entropy_form(const FormCoefficients& c, double rho, bool with_time) {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  auto coeffs = spatial_coefficients(c, rho);
  if (!with_time) return geometry::OneForm(base_coordinates(), std::move(coeffs));
  coeffs.push_back(-(c.theta_inv * c.div_P + c.div_k) / Expression::constant(rho));
  return geometry::OneForm(extended_coordinates(), std::move(coeffs));
}

geometry::OneForm entropy_form(const FormCoefficients& c, double rho, const PoyntingInputs& alt) {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  auto coeffs = spatial_coefficients(c, rho);
  const Expression r = Expression::constant(rho);
  Expression p_beta = alt.P[0] * c.beta[0] + alt.P[1] * c.beta[1] + alt.P[2] * c.beta[2];
  coeffs.push_back(-(alt.div_theta_inv_P + r * p_beta + c.div_k) / r);
  return geometry::OneForm(extended_coordinates(), std::move(coeffs));
}

FormCoefficients potential_coefficients(const Expression& U, double rho) {
  const auto& n = extended_coordinates();
  const Expression minus_rho = Expression::constant(-rho);
  FormCoefficients c;
  c.theta_inv = expr::derivative(U, "eps");
  const Expression theta = Expression::constant(1.0) / c.theta_inv;
  for (std::size_t i = 0; i < 9; ++i) {
    c.stress_term[i] = minus_rho * theta * expr::derivative(U, n[kF + i]);
    c.E_tensor[i] = minus_rho * theta * expr::derivative(U, n[kGpi + i]);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    c.E_loc[i] = theta * expr::derivative(U, n[kPi + i]);
    c.beta[i] = expr::derivative(U, n[kH + i]);
  }
  return c;
}

}  // namespace ctherm::ferroelectric
