#include "commands.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <fmt/format.h>

#include "ctherm/ferroelectric.hpp"
#include "ctherm/legendre.hpp"
#include "ctherm/thermoelastic.hpp"
#include "ctherm/vdw.hpp"

namespace ctherm::cli {

using expr::Expression;

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

Csv::Csv(std::vector<std::string> header) : width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void Csv::row(const std::vector<double>& values) {
  if (values.size() != width_)
    throw std::logic_error(fmt::format("csv row has {} values, header has {}", values.size(), width_));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_double(values[i]);
  }
  text_ += '\n';
}

namespace {

const json kEmptyObject = json::object();

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Reads the output section: "path" plus the command's extra keys.
struct OutputSection {
  std::optional<std::filesystem::path> path;
  std::map<std::string, std::filesystem::path> extra;
};

OutputSection read_output(const Node& root, const Context& ctx, std::initializer_list<const char*> extra_keys) {
  OutputSection out;
  const auto n = root.find("output");
  if (!n) return out;
  std::vector<const char*> keys{"path"};
  keys.insert(keys.end(), extra_keys.begin(), extra_keys.end());
  for (const auto& [key, node] : n->entries())
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) == keys.end())
      node.fail("unknown key");
  auto resolve = [&](const Node& node) {
    std::filesystem::path p = node.string();
    return p.is_relative() ? ctx.base / p : p;
  };
  if (const auto p = n->find("path")) out.path = resolve(*p);
  for (const char* key : extra_keys)
    if (const auto p = n->find(key)) out.extra[key] = resolve(*p);
  return out;
}

std::vector<std::string> prefixed(const std::string& prefix, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(prefix + n);
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

json point_json(const std::vector<std::string>& names, const std::vector<double>& values) {
  json p = json::object();
  for (std::size_t i = 0; i < names.size(); ++i) p[names[i]] = values[i];
  return p;
}

}  // namespace

Outcome cmd_check_closed(const Node& root, const Context& ctx) {
  root.object({"form", "sampling", "tolerance", "output"});
  const FormSpec spec = read_form(root.at("form"));
  const auto& names = spec.form.coordinates();
  const Sampling s = read_sampling(root.at("sampling"), names);
  const double tol = ctx.tol.value_or(root.number_or("tolerance", geometry::kDefaultClosenessTol));
  const std::uint64_t seed = ctx.seed.value_or(s.seed);
  const OutputSection output = read_output(root, ctx, {});

  const auto points = sampling::low_discrepancy(s.box, s.count, seed);
  const auto r = geometry::is_closed(spec.form, points, tol);

  json report;
  report["closed"] = r.closed;
  report["max_residual"] = r.max_residual;
  report["tolerance"] = tol;
  report["samples"] = s.count;
  report["seed"] = seed;
  report["coordinates"] = names.size();
  report["worst"] = {{"pair", {names[r.worst_i], names[r.worst_j]}},
                     {"sample", r.worst_sample},
                     {"point", point_json(names, points[r.worst_sample])}};
  Outcome o;
  o.code = r.closed ? kExitOk : kExitNegative;
  o.primary = dump(report);
  o.primary_path = output.path;
  o.note = r.closed ? fmt::format("closed: max residual {:.3g} <= {:.3g}", r.max_residual, tol)
                    : fmt::format("not closed: max residual {:.3g} at ({}, {})", r.max_residual, names[r.worst_i],
                                  names[r.worst_j]);
  return o;
}

namespace {

template <class State>
State read_initial_common(const Node& n, State x) {
  if (const auto e = n.find("eps")) x.eps = e->number();
  if (const auto F = n.find("F")) x.F = material::unflatten(F->numbers(9).data());
  if (const auto H = n.find("H")) {
    const auto h = H->numbers(3);
    x.H = Eigen::Vector3d(h[0], h[1], h[2]);
  }
  return x;
}

Eigen::Vector3d vector3(const Node& n) {
  const auto v = n.numbers(3);
  return {v[0], v[1], v[2]};
}

struct Integration {
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t every = 1;
};

Integration read_integration(const Node& n) {
  n.object({"t0", "t1", "dt", "every"});
  Integration g;
  g.t0 = n.number_or("t0", 0.0);
  const double t1 = n.at("t1").number();
  g.dt = n.at("dt").number();
  if (!(g.dt > 0)) n.at("dt").fail("must be positive");
  if (!(t1 > g.t0)) n.at("t1").fail("must exceed t0");
  const double steps = std::round((t1 - g.t0) / g.dt);
  if (std::abs(steps * g.dt - (t1 - g.t0)) > 1e-9 * std::max(1.0, std::abs(t1 - g.t0)))
    n.fail("t1 - t0 must be a whole number of steps dt");
  g.steps = static_cast<std::size_t>(steps);
  g.every = n.count_or("every", 1);
  if (g.every == 0) n.at("every").fail("must be positive");
  return g;
}

// Shared driver: `advance` maps (x, t) to the next state, `row` appends the
// derived columns. A domain exit keeps the rows written so far.
template <class State, class Advance, class Row>
Outcome integrate(const Integration& g, State x, Csv& csv, Advance advance, Row row) {
  Outcome o;
  double t = g.t0;
  try {
    row(csv, t, x);
    for (std::size_t n = 1; n <= g.steps; ++n) {
      x = advance(x, t);
      t = g.t0 + static_cast<double>(n) * g.dt;
      if (n % g.every == 0 || n == g.steps) row(csv, t, x);
    }
    o.note = fmt::format("integrated {} steps to t = {}", g.steps, format_double(t));
  } catch (const material::DomainExit& e) {
    o.code = kExitDomain;
    o.note = fmt::format("domain exit in step from t = {}: {}", format_double(e.time()), e.what());
  } catch (const material::TemperatureSingularity& e) {
    o.code = kExitDomain;
    o.note = fmt::format("domain exit at t = {}: {}", format_double(t), e.what());
  } catch (const expr::DomainError& e) {
    o.code = kExitDomain;
    o.note = fmt::format("domain exit at t = {}: {}", format_double(t), e.what());
  }
  o.primary = csv.str();
  return o;
}

Outcome simulate_thermoelastic(const Node& m, const Integration& g) {
  m.object({"type", "U", "sigma", "rho", "k", "initial", "forcing"});
  const auto& coords = thermoelastic::base_coordinates();
  const Expression U = m.at("U").field(coords).expression();
  std::optional<expr::ScalarField> sigma;
  if (const auto s = m.find("sigma")) sigma = s->field(coords);
  const auto model = [&] {
    try {
      return thermoelastic::Model({U, m.number_or("rho", 1.0), m.number_or("k", 1.0)});
    } catch (const std::invalid_argument& e) {
      m.fail(e.what());
    }
  }();

  thermoelastic::State x;
  if (const auto init = m.find("initial")) x = read_initial_common(init->object({"eps", "F", "H"}), x);
  thermoelastic::Forcing f;
  if (const auto fn = m.find("forcing")) {
    fn->object({"L", "divq"});
    if (const auto L = fn->find("L")) f.L = read_time_tensor(*L);
    if (const auto d = fn->find("divq")) f.divq = read_time_function(*d);
  }

  auto header = concat(coords, {"theta", "U"});
  header.insert(header.begin(), "t");
  if (sigma) header = concat(header, {"sigma_prod", "s"});
  Csv csv(header);
  return integrate(
      g, x, csv, [&](const thermoelastic::State& s, double t) { return thermoelastic::step(model, f, s, t, g.dt); },
      [&](Csv& out, double t, const thermoelastic::State& s) {
        const auto v = s.to_vector();
        const double theta = 1.0 / thermoelastic::constitutive_from_potential(model, s).theta_inv;
        const double u = thermoelastic::potential_value(model, s);
        std::vector<double> r{t};
        r.insert(r.end(), v.begin(), v.end());
        r.push_back(theta);
        r.push_back(u);
        if (sigma) {
          const double sp = sigma->value(v);
          r.push_back(sp);
          r.push_back(u + sp);
        }
        out.row(r);
      });
}

Outcome simulate_ferroelectric(const Node& m, const Integration& g) {
  m.object({"type", "U", "sigma", "rho", "k", "inertia", "initial", "forcing"});
  const auto& coords = ferroelectric::extended_coordinates();
  const Expression U = m.at("U").field(coords).expression();
  std::optional<expr::ScalarField> sigma;
  if (const auto s = m.find("sigma")) sigma = s->field(coords);
  const auto model = [&] {
    try {
      return ferroelectric::Model({U, m.number_or("rho", 1.0), m.number_or("k", 1.0), m.number_or("inertia", 1.0)});
    } catch (const std::invalid_argument& e) {
      m.fail(e.what());
    }
  }();

  ferroelectric::State x;
  if (const auto init = m.find("initial")) {
    init->object({"eps", "F", "H", "pi", "gpi", "u", "gu"});
    x = read_initial_common(*init, x);
    if (const auto n = init->find("pi")) x.pi = vector3(*n);
    if (const auto n = init->find("u")) x.u = vector3(*n);
    if (const auto n = init->find("gpi")) x.gpi = material::unflatten(n->numbers(9).data());
    if (const auto n = init->find("gu")) x.gu = material::unflatten(n->numbers(9).data());
  }
  ferroelectric::Forcing f;
  if (const auto fn = m.find("forcing")) {
    fn->object({"E_ext", "L", "divq", "poynting", "div_E_tensor", "div_J", "source"});
    if (const auto n = fn->find("E_ext")) f.E_ext = read_time_vector(*n);
    if (const auto n = fn->find("L")) f.L = read_time_tensor(*n);
    if (const auto n = fn->find("divq")) f.divq = read_time_function(*n);
    if (const auto n = fn->find("poynting")) f.poynting = read_time_function(*n);
    if (const auto n = fn->find("div_E_tensor")) f.div_E_tensor = read_time_vector(*n);
    if (const auto n = fn->find("div_J")) f.div_J = read_time_tensor(*n);
    if (const auto n = fn->find("source")) f.source = read_time_tensor(*n);
  }

  auto header = concat(ferroelectric::state_names(), {"theta", "U"});
  header.insert(header.begin(), "t");
  if (sigma) header = concat(header, {"sigma_prod", "s"});
  Csv csv(header);
  return integrate(
      g, x, csv, [&](const ferroelectric::State& s, double t) { return ferroelectric::step(model, f, s, t, g.dt); },
      [&](Csv& out, double t, const ferroelectric::State& s) {
        const auto v = s.to_vector();
        const double theta = 1.0 / ferroelectric::constitutive_from_potential(model, s, t).theta_inv;
        const double u = ferroelectric::potential_value(model, s, t);
        std::vector<double> r{t};
        r.insert(r.end(), v.begin(), v.end());
        r.push_back(theta);
        r.push_back(u);
        if (sigma) {
          const double sp = sigma->value(s.potential_point(t));
          r.push_back(sp);
          r.push_back(u + sp);
        }
        out.row(r);
      });
}

}  // namespace

Outcome cmd_simulate(const Node& root, const Context& ctx) {
  root.object({"model", "integration", "output"});
  const Node m = root.at("model");
  const std::string type = m.at("type").string();
  const Integration g = read_integration(root.at("integration"));
  const OutputSection output = read_output(root, ctx, {});
  Outcome o;
  if (type == "thermoelastic") o = simulate_thermoelastic(m, g);
  else if (type == "ferroelectric") o = simulate_ferroelectric(m, g);
  else m.at("type").fail(fmt::format("unknown model '{}' (thermoelastic, ferroelectric)", type));
  o.primary_path = output.path;
  return o;
}

namespace {

legendre::ConstitutiveSurface read_surface(const Node& root, bool with_sigma) {
  const auto chart = read_chart(root.at("chart"));
  const Expression U = root.at("U").field(chart.q_names()).expression();
  Expression sigma = Expression::constant(0.0);
  if (with_sigma)
    if (const auto s = root.find("sigma")) sigma = s->field(chart.q_names()).expression();
  return legendre::ConstitutiveSurface(chart, U, sigma);
}

}  // namespace

Outcome cmd_surface(const Node& root, const Context& ctx, SurfaceMode mode) {
  if (mode == SurfaceMode::Legendre) root.object({"chart", "U", "grid", "output"});
  else root.object({"chart", "U", "sigma", "grid", "output"});
  const auto S = read_surface(root, mode != SurfaceMode::Legendre);
  const auto& chart = S.chart();
  const Grid grid = read_grid(root.at("grid"), chart.q_names());
  const OutputSection output = read_output(root, ctx, {});

  const auto header = concat(concat(concat(chart.q_names(), {chart.potential_name()}), chart.p_names()),
                             prefixed("pullback_", chart.q_names()));
  Csv csv(header);
  const auto L = S.legendre();
  double worst = 0.0;
  for (const auto& q : grid.points()) {
    const auto x = mode == SurfaceMode::Legendre ? legendre::legendre_embed(L, q) : legendre::surface_embed(S, q);
    const Eigen::VectorXd j = mode == SurfaceMode::Legendre ? legendre::legendre_pullback(L, q)
                                                            : legendre::pullback_contact(S, q);
    std::vector<double> r(q);
    r.push_back(x.s());
    for (std::size_t i = 0; i < chart.n(); ++i) r.push_back(x.p(chart, i));
    for (Eigen::Index i = 0; i < j.size(); ++i) {
      r.push_back(j(i));
      worst = std::max(worst, std::abs(j(i)));
    }
    csv.row(r);
  }
  Outcome o;
  o.primary = csv.str();
  o.primary_path = output.path;
  o.note = fmt::format("{} points, max |pullback| {:.3g}", grid.points().size(), worst);
  return o;
}

Outcome cmd_admissible(const Node& root, const Context& ctx) {
  root.object({"chart", "U", "sigma", "curve", "admissibility", "output"});
  const auto S = read_surface(root, true);
  const auto curve = read_curve(root.at("curve"), ctx.base);
  double tol = processes::kDefaultAdmissibilityTol;
  bool ends = false;
  if (const auto a = root.find("admissibility")) {
    a->object({"tol", "include_endpoints"});
    tol = a->number_or("tol", tol);
    ends = a->boolean_or("include_endpoints", ends);
  }
  tol = ctx.tol.value_or(tol);
  const OutputSection output = read_output(root, ctx, {"rates"});

  const auto r = [&] {
    try {
      return processes::admissibility(S, curve, tol, ends);
    } catch (const expr::BindError& e) {
      root.at("curve").fail(e.what());
    }
  }();

  json report;
  report["admissible"] = r.admissible;
  report["tolerance"] = tol;
  report["endpoints_included"] = r.endpoints_included;
  report["samples"] = curve.size();
  report["violations"] = r.violations;
  report["delta_U"] = r.delta_U;
  report["delta_sigma"] = r.delta_sigma;
  report["delta_s"] = r.delta_s;
  report["rates"] = r.rates;

  Outcome o;
  o.code = r.admissible ? kExitOk : kExitNegative;
  o.primary = dump(report);
  o.primary_path = output.path;
  if (const auto it = output.extra.find("rates"); it != output.extra.end()) {
    Csv csv({"t", "rate", "counted", "violation"});
    for (std::size_t i = 0; i < r.rates.size(); ++i) {
      const bool counted = ends || (i != 0 && i + 1 != r.rates.size());
      const bool bad = std::find(r.violations.begin(), r.violations.end(), i) != r.violations.end();
      csv.row({curve.time(i), r.rates[i], counted ? 1.0 : 0.0, bad ? 1.0 : 0.0});
    }
    o.extra.push_back({it->second, csv.str()});
  }
  o.note = r.admissible ? "admissible" : fmt::format("not admissible: {} violating samples", r.violations.size());
  return o;
}

Outcome cmd_metric(const Node& root, const Context& ctx) {
  root.object({"coordinates", "U", "points", "grid", "output"});
  const auto names = root.at("coordinates").strings();
  if (names.empty()) root.at("coordinates").fail("needs at least one name");
  const expr::ScalarField U = root.at("U").field(names);
  if (root.has("points") == root.has("grid")) root.fail("give exactly one of 'points' or 'grid'");
  std::vector<std::vector<double>> points;
  if (const auto p = root.find("points")) {
    for (const auto& item : p->items()) points.push_back(item.numbers(names.size()));
  } else {
    points = read_grid(root.at("grid"), names).points();
  }
  const OutputSection output = read_output(root, ctx, {});

  std::vector<std::string> header(names);
  for (const auto& a : names)
    for (const auto& b : names) header.push_back("g_" + a + "_" + b);
  header.push_back("det");
  header.push_back("degenerate");
  Csv csv(header);
  std::size_t degenerate = 0;
  for (const auto& q : points) {
    const Eigen::MatrixXd g = processes::thermo_metric(U, q);
    const auto gd = processes::godograph_det(U, q);
    std::vector<double> r(q);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) r.push_back(g(i, j));
    r.push_back(gd.det);
    r.push_back(gd.degenerate ? 1.0 : 0.0);
    degenerate += gd.degenerate ? 1 : 0;
    csv.row(r);
  }
  Outcome o;
  o.primary = csv.str();
  o.primary_path = output.path;
  o.note = fmt::format("{} points, {} degenerate", points.size(), degenerate);
  return o;
}

Outcome cmd_action(const Node& root, const Context& ctx) {
  root.object({"form", "curve", "nodes", "output"});
  const FormSpec spec = read_form(root.at("form"));
  const auto curve = read_curve(root.at("curve"), ctx.base);
  const int nodes = static_cast<int>(root.count_or("nodes", processes::kDefaultActionNodes));
  if (nodes != 4 && nodes != 8 && nodes != 16 && nodes != 32) root.at("nodes").fail("must be 4, 8, 16 or 32");
  const OutputSection output = read_output(root, ctx, {});

  const double action = [&] {
    try {
      return processes::entropy_action(curve, spec.form, nodes);
    } catch (const expr::BindError& e) {
      root.at("curve").fail(e.what());
    }
  }();

  json report;
  report["action"] = action;
  report["nodes"] = nodes;
  report["samples"] = curve.size();
  report["t0"] = curve.time(0);
  report["t1"] = curve.time(curve.size() - 1);
  if (spec.potential) {
    auto at = [&](std::size_t i) {
      expr::Binding b = curve.binding(i);
      if (!b.index_of("t")) b.add("t", curve.time(i));
      return expr::eval(*spec.potential, b);
    };
    const double dU = at(curve.size() - 1) - at(0);
    report["delta_potential"] = dU;
    report["difference"] = action - dU;
  }
  Outcome o;
  o.primary = dump(report);
  o.primary_path = output.path;
  o.note = fmt::format("action {}", format_double(action));
  return o;
}

Outcome cmd_curvature(const Node& root, const Context& ctx) {
  root.object({"connection", "sampling", "points", "output"});
  const Node c = root.at("connection");
  c.object({"s", "q", "p", "potential"});
  const std::string s = c.find("s") ? c.at("s").string() : "s";
  const auto q = c.at("q").strings();
  if (c.has("p") == c.has("potential")) c.fail("give exactly one of 'p' or 'potential'");
  const auto coords = concat({s}, q);
  const auto connection = [&] {
    try {
      if (const auto U = c.find("potential")) return legendre::GibbsConnection::exact(U->field(q).expression(), s, q);
      const auto items = c.at("p").items();
      if (items.size() != q.size()) c.at("p").fail(fmt::format("expected {} expressions", q.size()));
      std::vector<Expression> p;
      for (const auto& item : items) p.push_back(item.field(coords).expression());
      return legendre::GibbsConnection(s, q, p);
    } catch (const std::invalid_argument& e) {
      c.fail(e.what());
    }
  }();

  if (root.has("points") == root.has("sampling")) root.fail("give exactly one of 'points' or 'sampling'");
  std::vector<std::vector<double>> points;
  std::uint64_t seed = 0;
  if (const auto p = root.find("points")) {
    if (ctx.seed) root.fail("--seed needs 'sampling', not 'points'");
    for (const auto& item : p->items()) points.push_back(item.numbers(coords.size()));
  } else {
    const Sampling smp = read_sampling(root.at("sampling"), coords);
    seed = ctx.seed.value_or(smp.seed);
    points = sampling::low_discrepancy(smp.box, smp.count, seed);
  }
  const OutputSection output = read_output(root, ctx, {});

  std::vector<std::string> header(coords);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) header.push_back("Omega_" + q[i] + "_" + q[j]);
  header.push_back("max_abs");
  Csv csv(header);
  double worst = 0.0;
  for (const auto& x : points) {
    const Eigen::MatrixXd W = legendre::connection_curvature(connection, x);
    std::vector<double> r(x);
    double m = 0.0;
    for (Eigen::Index i = 0; i < W.rows(); ++i)
      for (Eigen::Index j = i + 1; j < W.cols(); ++j) {
        r.push_back(W(i, j));
        m = std::max(m, std::abs(W(i, j)));
      }
    r.push_back(m);
    worst = std::max(worst, m);
    csv.row(r);
  }
  Outcome o;
  o.primary = csv.str();
  o.primary_path = output.path;
  o.note = fmt::format("{} points, max |Omega| {:.3g}", points.size(), worst);
  return o;
}

Outcome cmd_vdw(const Node& root, const Context& ctx) {
  root.object({"params", "spinodal", "grid", "output"});
  vdw::Params p;
  if (const auto n = root.find("params")) {
    n->object({"a", "b", "R", "cV", "as_printed"});
    p.a = n->number_or("a", p.a);
    p.b = n->number_or("b", p.b);
    p.R = n->number_or("R", p.R);
    p.cV = n->number_or("cV", p.cV);
    p.as_printed = n->boolean_or("as_printed", p.as_printed);
    if (!(p.cV > 0)) n->at("cV").fail("must be positive");
  }
  double S = 0.0, lo = 0.15, hi = 3.0, xtol = 1e-10;
  std::size_t samples = 2000;
  if (const auto n = root.find("spinodal")) {
    n->object({"S", "V", "samples", "xtol"});
    S = n->number_or("S", S);
    if (const auto V = n->find("V")) {
      const auto v = V->numbers(2);
      lo = v[0];
      hi = v[1];
      if (!(p.b < lo && lo < hi)) V->fail("need b < lo < hi");
    }
    samples = n->count_or("samples", samples);
    if (samples == 0) n->at("samples").fail("must be positive");
    xtol = n->number_or("xtol", xtol);
  }
  xtol = ctx.tol.value_or(xtol);
  if (!(xtol > 0)) root.fail("bisection tolerance must be positive");
  std::optional<Grid> grid;
  if (const auto g = root.find("grid")) grid = read_grid(*g, {"S", "V"});
  const OutputSection output = read_output(root, ctx, {"surface"});
  if (grid && !output.extra.count("surface")) throw ConfigError(root.path().empty() ? "output.surface" : root.path() + ".output.surface", "required when 'grid' is given");

  const auto roots = vdw::spinodal(p, S, lo, hi, samples, xtol);
  json report;
  report["params"] = {{"a", p.a}, {"b", p.b}, {"R", p.R}, {"cV", p.cV}, {"as_printed", p.as_printed}};
  report["potential"] = vdw::potential(p).to_string();
  report["isentrope_S"] = S;
  report["interval"] = {lo, hi};
  report["bisection_tolerance"] = xtol;
  json sp = json::array();
  for (const double V : roots) {
    const auto pt = vdw::evaluate(p, S, V);
    sp.push_back({{"V", V}, {"T", pt.T}, {"p", pt.p}, {"U", pt.U}});
  }
  report["spinodal"] = sp;

  Outcome o;
  if (grid) {
    Csv csv({"S", "V", "U", "T", "p", "det"});
    for (const auto& x : grid->points()) {
      const auto pt = vdw::evaluate(p, x[0], x[1]);
      csv.row({pt.S, pt.V, pt.U, pt.T, pt.p, pt.det});
    }
    o.extra.push_back({output.extra.at("surface"), csv.str()});
    report["surface_rows"] = grid->points().size();
  }
  o.primary = dump(report);
  o.primary_path = output.path;
  o.note = fmt::format("{} spinodal point(s) on S = {}", roots.size(), format_double(S));
  return o;
}

}  // namespace ctherm::cli
