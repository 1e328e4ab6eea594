#include "ctherm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/LU>
#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

namespace ctherm::geometry {

ContactChart::ContactChart(std::string potential, std::vector<std::string> q, std::vector<std::string> p,
                           bool time_extended)
    : s_(std::move(potential)), q_(std::move(q)), p_(std::move(p)), time_extended_(time_extended) {
  if (q_.empty()) throw std::invalid_argument("ContactChart: n must be positive");
  if (q_.size() != p_.size()) throw std::invalid_argument("ContactChart: q and p counts differ");
  std::set<std::string> seen{s_};
  for (const auto& names : {q_, p_})
    for (const auto& name : names)
      if (!seen.insert(name).second)
        throw std::invalid_argument(fmt::format("ContactChart: duplicate coordinate name '{}'", name));
}

ContactChart ContactChart::canonical(std::size_t n, bool time_extended) {
  std::vector<std::string> q, p;
  for (std::size_t i = 1; i <= n; ++i) {
    q.push_back(fmt::format("q{}", i));
    p.push_back(fmt::format("p{}", i));
  }
  if (time_extended && n > 0) q.back() = "t";
  return ContactChart("s", std::move(q), std::move(p), time_extended);
}

std::vector<std::string> ContactChart::coordinate_names() const {
  std::vector<std::string> out{s_};
  out.insert(out.end(), q_.begin(), q_.end());
  out.insert(out.end(), p_.begin(), p_.end());
  return out;
}

PhasePoint PhasePoint::from_binding(const ContactChart& chart, const expr::Binding& b) {
  PhasePoint x;
  for (const auto& name : chart.coordinate_names()) {
    const auto i = b.index_of(name);
    if (!i) throw std::invalid_argument(fmt::format("PhasePoint: coordinate '{}' not bound", name));
    x.coords.push_back(b.values()[*i]);
  }
  return x;
}

expr::Binding PhasePoint::to_binding(const ContactChart& chart) const {
  return expr::Binding(chart.coordinate_names(), coords);
}

namespace {
void check_point(const ContactChart& chart, const PhasePoint& x) {
  if (x.coords.size() != chart.dimension())
    throw std::invalid_argument(
        fmt::format("phase point has {} coordinates, chart needs {}", x.coords.size(), chart.dimension()));
}
}  // namespace

double contact_eval(const ContactChart& chart, const PhasePoint& x, std::span<const double> v) {
  check_point(chart, x);
  if (v.size() != chart.dimension())
    throw std::invalid_argument(
        fmt::format("tangent vector has {} components, chart needs {}", v.size(), chart.dimension()));
  double out = v[ContactChart::s_index()];
  for (std::size_t i = 0; i < chart.n(); ++i) out -= x.p(chart, i) * v[chart.q_index(i)];
  return out;
}

PhasePoint reeb_flow(const PhasePoint& x, double tau) {
  PhasePoint y = x;
  y.coords.at(0) += tau;
  return y;
}

Eigen::VectorXd reeb_field(const ContactChart& chart) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(chart.dimension()));
  z(ContactChart::s_index()) = 1.0;
  return z;
}

Eigen::MatrixXd contact_differential(const ContactChart& chart) {
  const auto d = static_cast<Eigen::Index>(chart.dimension());
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < chart.n(); ++i) {
    const auto q = static_cast<Eigen::Index>(chart.q_index(i));
    const auto p = static_cast<Eigen::Index>(chart.p_index(i));
    W(q, p) = 1.0;
    W(p, q) = -1.0;
  }
  return W;
}

Eigen::MatrixXd horizontal_basis(const ContactChart& chart, const PhasePoint& x) {
  check_point(chart, x);
  const std::size_t n = chart.n();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(chart.dimension()),
                                            static_cast<Eigen::Index>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto col_p = static_cast<Eigen::Index>(i);
    const auto col_q = static_cast<Eigen::Index>(n + i);
    B(static_cast<Eigen::Index>(chart.p_index(i)), col_p) = 1.0;
    B(static_cast<Eigen::Index>(chart.q_index(i)), col_q) = 1.0;
    B(ContactChart::s_index(), col_q) = x.p(chart, i);
  }
  return B;
}

double contact_nondegeneracy(const ContactChart& chart, const PhasePoint& x) {
  const Eigen::MatrixXd B = horizontal_basis(chart, x);
  const Eigen::MatrixXd M = B.transpose() * contact_differential(chart) * B;
  return M.determinant();
}

OneForm::OneForm(std::vector<std::string> coordinates, std::vector<expr::Expression> coefficients)
    : coords_(std::move(coordinates)) {
  if (coefficients.size() != coords_.size())
    throw std::invalid_argument(fmt::format("OneForm: {} coefficients for {} coordinates", coefficients.size(),
                                            coords_.size()));
  fields_.reserve(coefficients.size());
  for (auto& c : coefficients) fields_.emplace_back(std::move(c), coords_);
}

OneForm OneForm::exact(const expr::Expression& potential, std::vector<std::string> coordinates) {
  std::vector<expr::Expression> coeffs;
  coeffs.reserve(coordinates.size());
  for (const auto& name : coordinates) coeffs.push_back(expr::derivative(potential, name));
  return OneForm(std::move(coordinates), std::move(coeffs));
}

Eigen::VectorXd OneForm::evaluate(std::span<const double> x) const {
  Eigen::VectorXd a(static_cast<Eigen::Index>(fields_.size()));
  for (std::size_t i = 0; i < fields_.size(); ++i) a(static_cast<Eigen::Index>(i)) = fields_[i].value(x);
  return a;
}

Eigen::MatrixXd OneForm::jacobian(std::span<const double> x) const {
  const auto n = static_cast<Eigen::Index>(fields_.size());
  Eigen::MatrixXd J(n, n);
  std::vector<double> row(fields_.size());
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    fields_[i].gradient(x, row);
    for (std::size_t j = 0; j < row.size(); ++j) J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  return J;
}

std::vector<double> OneForm::point_from(const expr::Binding& b) const {
  std::vector<double> x;
  x.reserve(coords_.size());
  for (const auto& name : coords_) {
    const auto i = b.index_of(name);
    if (!i) throw expr::BindError(fmt::format("coordinate '{}' is not bound", name), name);
    x.push_back(b.values()[*i]);
  }
  return x;
}

Eigen::MatrixXd d_residual(const OneForm& form, std::span<const double> x) {
  const Eigen::MatrixXd J = form.jacobian(x);
  const Eigen::Index n = J.rows();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double c = J(i, j) - J(j, i);
      C(i, j) = c;
      C(j, i) = -c;
    }
  return C;
}

Eigen::MatrixXd d_residual(const OneForm& form, const expr::Binding& x) {
  return d_residual(form, form.point_from(x));
}

ClosenessReport is_closed(const OneForm& form, const std::vector<std::vector<double>>& sample, double tol) {
  if (sample.empty()) throw std::invalid_argument("is_closed: empty sample");
  ClosenessReport report;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const Eigen::MatrixXd C = d_residual(form, sample[k]);
    for (Eigen::Index i = 0; i < C.rows(); ++i)
      for (Eigen::Index j = i + 1; j < C.cols(); ++j) {
        const double r = std::abs(C(i, j));
        if (r > report.max_residual || std::isnan(r)) {
          report.max_residual = r;
          report.worst_i = static_cast<std::size_t>(i);
          report.worst_j = static_cast<std::size_t>(j);
          report.worst_sample = k;
        }
      }
  }
  report.closed = report.max_residual <= tol;
  return report;
}

ClosenessReport is_closed(const OneForm& form, const std::vector<expr::Binding>& sample, double tol) {
  std::vector<std::vector<double>> points;
  points.reserve(sample.size());
  for (const auto& b : sample) points.push_back(form.point_from(b));
  return is_closed(form, points, tol);
}

namespace {

using Gauss32 = boost::math::quadrature::gauss<double, 32>;

// Integral of the form along the staircase that moves the axes in `order`.
double staircase(const OneForm& form, std::vector<double> x, const std::vector<double>& target,
                 const std::vector<std::size_t>& order) {
  double total = 0.0;
  for (const std::size_t k : order) {
    const double a = x[k];
    const double b = target[k];
    if (a == b) continue;
    const auto& coeff = form.coefficient(k);
    auto integrand = [&](double u) {
      std::vector<double> y = x;
      y[k] = u;
      return coeff.value(y);
    };
    total += Gauss32::integrate(integrand, a, b);
    x[k] = b;
  }
  return total;
}

}  // namespace

PotentialReconstruction reconstruct_potential(const OneForm& form, const expr::Binding& base,
                                              const expr::Binding& target) {
  const std::vector<double> from = form.point_from(base);
  const std::vector<double> to = form.point_from(target);
  std::vector<std::size_t> order(from.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const double forward = staircase(form, from, to, order);
  std::reverse(order.begin(), order.end());
  const double reversed = staircase(form, from, to, order);
  return {forward, std::abs(forward - reversed)};
}

}  // namespace ctherm::geometry
