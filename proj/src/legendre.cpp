#include "ctherm/legendre.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace ctherm::legendre {

using geometry::ContactChart;
using geometry::PhasePoint;

LegendreSurface::LegendreSurface(ContactChart chart, expr::Expression U)
    : chart_(std::move(chart)), U_(std::move(U), chart_.q_names()) {}

ConstitutiveSurface::ConstitutiveSurface(ContactChart chart, expr::Expression U, expr::Expression sigma)
    : chart_(std::move(chart)),
      U_(U, chart_.q_names()),
      sigma_(sigma, chart_.q_names()),
      S_(U + sigma, chart_.q_names()) {}

std::vector<double> base_point(const ContactChart& chart, const expr::Binding& q) {
  std::vector<double> x;
  x.reserve(chart.n());
  for (const auto& name : chart.q_names()) {
    const auto i = q.index_of(name);
    if (!i) throw expr::BindError(fmt::format("base coordinate '{}' is not bound", name), name);
    x.push_back(q.values()[*i]);
  }
  return x;
}

namespace {

void check_base(const ContactChart& chart, std::span<const double> q) {
  if (q.size() != chart.n())
    throw std::invalid_argument(fmt::format("base point has {} coordinates, chart needs {}", q.size(), chart.n()));
}

PhasePoint lift(const ContactChart& chart, double s, std::span<const double> q, const std::vector<double>& p) {
  PhasePoint x;
  x.coords.reserve(chart.dimension());
  x.coords.push_back(s);
  x.coords.insert(x.coords.end(), q.begin(), q.end());
  x.coords.insert(x.coords.end(), p.begin(), p.end());
  return x;
}

}  // namespace

PhasePoint legendre_embed(const LegendreSurface& L, std::span<const double> q) {
  check_base(L.chart(), q);
  std::vector<double> p(q.size());
  const double u = L.potential().gradient(q, p);
  return lift(L.chart(), u, q, p);
}

PhasePoint legendre_embed(const LegendreSurface& L, const expr::Binding& q) {
  return legendre_embed(L, base_point(L.chart(), q));
}

PhasePoint surface_embed(const ConstitutiveSurface& S, std::span<const double> q) {
  check_base(S.chart(), q);
  std::vector<double> p(q.size());
  const double u = S.potential().gradient(q, p);
  const double sigma = S.production().value(q);
  return lift(S.chart(), u + sigma, q, p);
}

PhasePoint surface_embed(const ConstitutiveSurface& S, const expr::Binding& q) {
  return surface_embed(S, base_point(S.chart(), q));
}

Eigen::VectorXd pullback_contact(const ConstitutiveSurface& S, std::span<const double> q) {
  check_base(S.chart(), q);
  return S.entropy().gradient(q) - S.potential().gradient(q);
}

Eigen::VectorXd pullback_contact(const ConstitutiveSurface& S, const expr::Binding& q) {
  return pullback_contact(S, base_point(S.chart(), q));
}

Eigen::VectorXd legendre_pullback(const LegendreSurface& L, std::span<const double> q) {
  const PhasePoint x = legendre_embed(L, q);
  const Eigen::VectorXd ds = L.potential().gradient(q);
  Eigen::VectorXd out(ds.size());
  for (std::size_t i = 0; i < L.chart().n(); ++i)
    out(static_cast<Eigen::Index>(i)) = ds(static_cast<Eigen::Index>(i)) - x.p(L.chart(), i);
  return out;
}

std::vector<PhasePoint> reversible_companion(const ConstitutiveSurface& S, const std::vector<expr::Binding>& path) {
  const LegendreSurface L = S.legendre();
  std::vector<PhasePoint> out;
  out.reserve(path.size());
  for (const auto& q : path) out.push_back(legendre_embed(L, q));
  return out;
}

GibbsConnection::GibbsConnection(std::string s, std::vector<std::string> q, std::vector<expr::Expression> p) {
  if (q.empty()) throw std::invalid_argument("GibbsConnection: no base coordinates");
  if (p.size() != q.size())
    throw std::invalid_argument(fmt::format("GibbsConnection: {} coefficients for {} base coordinates", p.size(),
                                            q.size()));
  coords_.push_back(std::move(s));
  coords_.insert(coords_.end(), q.begin(), q.end());
  p_.reserve(p.size());
  for (auto& e : p) p_.emplace_back(std::move(e), coords_);
}

GibbsConnection GibbsConnection::exact(const expr::Expression& U, std::string s, std::vector<std::string> q) {
  std::vector<expr::Expression> p;
  for (const auto& name : q) p.push_back(expr::derivative(U, name));
  return GibbsConnection(std::move(s), std::move(q), std::move(p));
}

Eigen::MatrixXd connection_curvature(const GibbsConnection& c, std::span<const double> x) {
  if (x.size() != c.coordinates().size())
    throw std::invalid_argument(
        fmt::format("connection point has {} coordinates, needs {}", x.size(), c.coordinates().size()));
  const std::size_t n = c.n();
  // J(i, 0) = p_{i,s}, J(i, 1 + j) = p_{i,q^j}
  Eigen::MatrixXd J(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n + 1));
  Eigen::VectorXd p(static_cast<Eigen::Index>(n));
  std::vector<double> row(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    p(static_cast<Eigen::Index>(i)) = c.coefficient(i).gradient(x, row);
    for (std::size_t k = 0; k <= n; ++k) J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
  }
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i)
    for (Eigen::Index j = i + 1; j < static_cast<Eigen::Index>(n); ++j) {
      const double w = (J(j, 0) * p(i) - J(i, 0) * p(j)) + (J(j, 1 + i) - J(i, 1 + j));
      W(i, j) = w;
      W(j, i) = -w;
    }
  return W;
}

Eigen::MatrixXd connection_curvature(const GibbsConnection& c, const expr::Binding& x) {
  std::vector<double> v;
  for (const auto& name : c.coordinates()) {
    const auto i = x.index_of(name);
    if (!i) throw expr::BindError(fmt::format("coordinate '{}' is not bound", name), name);
    v.push_back(x.values()[*i]);
  }
  return connection_curvature(c, v);
}

}  // namespace ctherm::legendre
