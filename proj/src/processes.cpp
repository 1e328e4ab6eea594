#include "ctherm/processes.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include <Eigen/LU>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

namespace ctherm::processes {

ProcessCurve::ProcessCurve(std::vector<std::string> names, std::vector<double> times,
                           std::vector<std::vector<double>> points)
    : names_(std::move(names)), times_(std::move(times)), points_(std::move(points)) {
  if (times_.size() < 2) throw std::invalid_argument("ProcessCurve: at least two samples are required");
  if (points_.size() != times_.size())
    throw std::invalid_argument(
        fmt::format("ProcessCurve: {} times but {} points", times_.size(), points_.size()));
  std::set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw std::invalid_argument(fmt::format("ProcessCurve: duplicate name '{}'", n));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != names_.size())
      throw std::invalid_argument(fmt::format("ProcessCurve: sample {} has {} values, expected {}", i,
                                              points_[i].size(), names_.size()));
    if (i > 0 && !(times_[i] > times_[i - 1]))
      throw std::invalid_argument(fmt::format("ProcessCurve: times not strictly increasing at sample {}", i));
  }
}

expr::Binding ProcessCurve::binding(std::size_t i) const { return expr::Binding(names_, points_.at(i)); }

ProcessCurve ProcessCurve::reversed() const {
  std::vector<double> t(times_.rbegin(), times_.rend());
  for (auto& v : t) v = -v;
  return ProcessCurve(names_, std::move(t), std::vector<std::vector<double>>(points_.rbegin(), points_.rend()));
}

std::vector<double> ProcessCurve::tangent(std::size_t i) const {
  const std::size_t n = size();
  if (i >= n) throw std::out_of_range("ProcessCurve::tangent");
  const std::size_t a = i == 0 ? 0 : i - 1;
  const std::size_t b = i + 1 == n ? i : i + 1;
  const double dt = times_[b] - times_[a];
  std::vector<double> v(dimension());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = (points_[b][k] - points_[a][k]) / dt;
  return v;
}

ProcessCurve sample_curve(std::vector<std::string> names, double t0, double t1, std::size_t n,
                          const std::function<std::vector<double>(double)>& q) {
  if (n < 1) throw std::invalid_argument("sample_curve: need at least one interval");
  std::vector<double> times;
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n);
    times.push_back(t);
    pts.push_back(q(t));
  }
  return ProcessCurve(std::move(names), std::move(times), std::move(pts));
}

namespace {

// Where each coordinate of a field comes from: a curve slot or the time.
struct Gather {
  std::vector<std::optional<std::size_t>> slot;  // nullopt means time

  Gather(const std::vector<std::string>& coords, const ProcessCurve& curve) {
    for (const auto& name : coords) {
      std::optional<std::size_t> idx;
      for (std::size_t k = 0; k < curve.names().size(); ++k)
        if (curve.names()[k] == name) idx = k;
      if (!idx && name != "t")
        throw expr::BindError(fmt::format("coordinate '{}' is not on the curve", name), name);
      slot.push_back(idx);
    }
  }

  std::vector<double> operator()(std::span<const double> q, double t) const {
    std::vector<double> x(slot.size());
    for (std::size_t i = 0; i < slot.size(); ++i) x[i] = slot[i] ? q[*slot[i]] : t;
    return x;
  }
};

template <class Integrand>
double gauss(int nodes, Integrand&& f) {
  using boost::math::quadrature::gauss;
  switch (nodes) {
    case 4: return gauss<double, 4>::integrate(f, 0.0, 1.0);
    case 8: return gauss<double, 8>::integrate(f, 0.0, 1.0);
    case 16: return gauss<double, 16>::integrate(f, 0.0, 1.0);
    case 32: return gauss<double, 32>::integrate(f, 0.0, 1.0);
    default: throw std::invalid_argument(fmt::format("unsupported Gauss-Legendre node count {} (4, 8, 16, 32)", nodes));
  }
}

// Integral over the piecewise-linear curve of covector(q, t) . increment(i)
// on each interval i, with q and t interpolated linearly.
double line_integral(const ProcessCurve& curve, int nodes,
                     const std::function<Eigen::VectorXd(std::span<const double>, double)>& covector,
                     const std::function<Eigen::VectorXd(std::size_t)>& increment) {
  double total = 0.0;
  std::vector<double> q(curve.dimension());
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const auto& a = curve.point(i);
    const auto& b = curve.point(i + 1);
    const double ta = curve.time(i), tb = curve.time(i + 1);
    const Eigen::VectorXd d = increment(i);
    total += gauss(nodes, [&](double s) {
      for (std::size_t k = 0; k < q.size(); ++k) q[k] = a[k] + s * (b[k] - a[k]);
      return covector(q, ta + s * (tb - ta)).dot(d);
    });
  }
  return total;
}

}  // namespace

double entropy_action(const ProcessCurve& curve, const geometry::OneForm& eta, int nodes) {
  const Gather gather(eta.coordinates(), curve);
  auto covector = [&](std::span<const double> q, double t) { return eta.evaluate(gather(q, t)); };
  auto increment = [&](std::size_t i) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(gather.slot.size()));
    for (std::size_t k = 0; k < gather.slot.size(); ++k) {
      const auto& s = gather.slot[k];
      d(static_cast<Eigen::Index>(k)) =
          s ? curve.point(i + 1)[*s] - curve.point(i)[*s] : curve.time(i + 1) - curve.time(i);
    }
    return d;
  };
  return line_integral(curve, nodes, covector, increment);
}

namespace {

Gather surface_gather(const legendre::ConstitutiveSurface& surface, const ProcessCurve& curve) {
  Gather g(surface.chart().q_names(), curve);
  for (std::size_t i = 0; i < g.slot.size(); ++i)
    if (!g.slot[i]) {
      const auto& name = surface.chart().q_names()[i];
      throw expr::BindError(fmt::format("coordinate '{}' is not on the curve", name), name);
    }
  return g;
}

}  // namespace

AdmissibilityReport admissibility(const legendre::ConstitutiveSurface& surface, const ProcessCurve& curve, double tol,
                                  bool include_endpoints) {
  const Gather gather = surface_gather(surface, curve);
  const auto& sigma = surface.production();
  AdmissibilityReport r;
  r.endpoints_included = include_endpoints;
  const std::size_t n = curve.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = gather(curve.point(i), curve.time(i));
    const auto v = gather(curve.tangent(i), 0.0);
    const Eigen::VectorXd g = sigma.gradient(x);
    double rate = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) rate += g(static_cast<Eigen::Index>(k)) * v[k];
    r.rates.push_back(rate);
    const bool endpoint = i == 0 || i + 1 == n;
    if ((include_endpoints || !endpoint) && rate < -tol) r.violations.push_back(i);
  }
  r.admissible = r.violations.empty();
  const auto first = gather(curve.point(0), curve.time(0));
  const auto last = gather(curve.point(n - 1), curve.time(n - 1));
  r.delta_sigma = sigma.value(last) - sigma.value(first);
  r.delta_U = surface.potential().value(last) - surface.potential().value(first);
  r.delta_s = r.delta_U + r.delta_sigma;
  return r;
}

LiftedEntropyChange lifted_entropy_change(const legendre::ConstitutiveSurface& surface, const ProcessCurve& curve,
                                          int nodes) {
  const Gather gather = surface_gather(surface, curve);
  auto increment = [&](std::size_t i) {
    const auto d = gather(curve.point(i + 1), 0.0);
    const auto c = gather(curve.point(i), 0.0);
    Eigen::VectorXd out(static_cast<Eigen::Index>(d.size()));
    for (std::size_t k = 0; k < d.size(); ++k) out(static_cast<Eigen::Index>(k)) = d[k] - c[k];
    return out;
  };
  LiftedEntropyChange out;
  out.contact_part = line_integral(
      curve, nodes,
      [&](std::span<const double> q, double t) { return legendre::pullback_contact(surface, gather(q, t)); },
      increment);
  out.pdq_part = line_integral(
      curve, nodes,
      [&](std::span<const double> q, double t) {
        const auto x = legendre::surface_embed(surface, gather(q, t));
        Eigen::VectorXd p(static_cast<Eigen::Index>(surface.chart().n()));
        for (std::size_t k = 0; k < surface.chart().n(); ++k) p(static_cast<Eigen::Index>(k)) = x.p(surface.chart(), k);
        return p;
      },
      increment);
  return out;
}

Eigen::MatrixXd thermo_metric(const expr::ScalarField& U, std::span<const double> q) { return U.hessian(q); }

Godograph godograph_det(const expr::ScalarField& U, std::span<const double> q) {
  Godograph g;
  g.det = thermo_metric(U, q).determinant();
  g.degenerate = std::abs(g.det) < kDegenerateDet;
  return g;
}

std::vector<double> sign_changes(const std::function<double(double)>& f, double lo, double hi, std::size_t samples,
                                 double xtol) {
  if (!(hi > lo) || samples < 1 || !(xtol > 0)) throw std::invalid_argument("sign_changes: bad scan parameters");
  std::vector<double> roots;
  double a = lo, fa = f(lo);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double b = i == samples ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples);
    const double fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if (fa * fb < 0.0) {
      boost::uintmax_t iters = 200;
      const auto br = boost::math::tools::bisect(
          f, a, b, [xtol](double x, double y) { return std::abs(y - x) <= xtol; }, iters);
      roots.push_back(0.5 * (br.first + br.second));
    }
    a = b;
    fa = fb;
  }
  if (fa == 0.0) roots.push_back(hi);
  return roots;
}

std::vector<double> rate_relation_residual(const expr::ScalarField& U, const ProcessCurve& curve) {
  const Gather gather(U.coordinates(), curve);
  // indices of U's coordinates that lie on the curve, in U order, and of t
  std::vector<std::size_t> q_idx;
  std::optional<std::size_t> t_idx;
  for (std::size_t i = 0; i < gather.slot.size(); ++i) {
    if (gather.slot[i]) q_idx.push_back(i);
    else t_idx = i;
  }
  const std::size_t n = curve.size();
  std::vector<Eigen::VectorXd> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = U.gradient(gather(curve.point(k), curve.time(k)), q_idx);

  std::vector<double> out;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const auto x = gather(curve.point(k), curve.time(k));
    const Eigen::MatrixXd H = U.hessian(x);
    const Eigen::VectorXd dp = (p[k + 1] - p[k - 1]) / (curve.time(k + 1) - curve.time(k - 1));
    const auto v = gather(curve.tangent(k), 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < q_idx.size(); ++i) {
      const auto qi = static_cast<Eigen::Index>(q_idx[i]);
      double rhs = 0.0;
      for (std::size_t j = 0; j < q_idx.size(); ++j) rhs += H(qi, static_cast<Eigen::Index>(q_idx[j])) * v[q_idx[j]];
      if (t_idx) rhs += H(qi, static_cast<Eigen::Index>(*t_idx));
      worst = std::max(worst, std::abs(dp(static_cast<Eigen::Index>(i)) - rhs));
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace ctherm::processes
