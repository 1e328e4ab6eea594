#include <cmath>
#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "ctherm/processes.hpp"
#include "ctherm/thermoelastic.hpp"
#include "ctherm/vdw.hpp"
#include "support/oracles.hpp"

namespace ctherm::processes {
namespace {

using expr::Expression;
using geometry::ContactChart;

geometry::OneForm form_of(std::vector<std::string> coords, std::vector<std::string> coeffs) {
  std::vector<Expression> es;
  for (const auto& c : coeffs) es.push_back(Expression::parse(c));
  return geometry::OneForm(std::move(coords), std::move(es));
}

ProcessCurve line_curve(double from, double to, std::size_t n = 10) {
  return sample_curve({"q1"}, 0.0, 1.0, n, [&](double t) { return std::vector<double>{from + (to - from) * t}; });
}

TEST(Curve, Validation) {
  EXPECT_THROW(ProcessCurve({"x"}, {0.0}, {{1.0}}), std::invalid_argument);
  EXPECT_THROW(ProcessCurve({"x"}, {0.0, 0.0}, {{1.0}, {2.0}}), std::invalid_argument);
  EXPECT_THROW(ProcessCurve({"x"}, {0.0, 1.0}, {{1.0}, {2.0, 3.0}}), std::invalid_argument);
  EXPECT_THROW(ProcessCurve({"x", "x"}, {0.0, 1.0}, {{1.0, 1.0}, {2.0, 3.0}}), std::invalid_argument);
}

TEST(Curve, TangentsAndReversal) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> t{0.0};
  std::vector<std::vector<double>> pts{{u(rng), u(rng)}};
  for (int i = 0; i < 12; ++i) {
    t.push_back(t.back() + 0.05 + 0.1 * std::abs(u(rng)));
    pts.push_back({u(rng), u(rng)});
  }
  const ProcessCurve c({"a", "b"}, t, pts);
  const ProcessCurve r = c.reversed();
  EXPECT_EQ(r.time(0), -c.time(12));
  EXPECT_EQ(r.point(0), c.point(12));
  EXPECT_EQ(r.reversed().times(), c.times());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto a = c.tangent(i);
    const auto b = r.tangent(c.size() - 1 - i);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(a[k], -b[k]);
  }
  EXPECT_DOUBLE_EQ(c.tangent(0)[0], (pts[1][0] - pts[0][0]) / (t[1] - t[0]));
}

TEST(Action, ExactFormGivesPotentialDifference) {
  std::mt19937_64 rng(41);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int k = 0; k < 10; ++k) {
    const auto U = Expression::parse(oracle::random_polynomial(rng, vars, 3, 10));
    const auto c = sample_curve(vars, 0.0, 1.0, 25, [](double t) {
      return std::vector<double>{std::cos(3 * t), t * t - 0.5, std::exp(-t)};
    });
    const double direct = expr::eval(U, c.binding(c.size() - 1)) - expr::eval(U, c.binding(0));
    const double action = entropy_action(c, geometry::OneForm::exact(U, vars));
    EXPECT_LE(std::abs(action - direct), 1e-8 * std::max(1.0, std::abs(direct)));
  }
}

TEST(Action, ClosedLoopVanishes) {
  const auto U = Expression::parse("x^2*y - exp(0.5*y)*x");
  const auto loop = sample_curve({"x", "y"}, 0.0, 1.0, 64, [](double t) {
    return std::vector<double>{std::cos(2 * M_PI * t), 0.5 * std::sin(2 * M_PI * t)};
  });
  ASSERT_LE(std::abs(loop.point(0)[0] - loop.point(64)[0]) + std::abs(loop.point(0)[1] - loop.point(64)[1]), 1e-15);
  EXPECT_LE(std::abs(entropy_action(loop, geometry::OneForm::exact(U, {"x", "y"}))), 1e-12);
}

TEST(Action, UnitSquareLoop) {
  const ProcessCurve square({"x", "y"}, {0, 1, 2, 3, 4}, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
  EXPECT_DOUBLE_EQ(entropy_action(square, form_of({"x", "y"}, {"y", "0"})), -1.0);
}

TEST(Action, TimeCoordinateFollowsCurveTime) {
  // eta = dq + q dt along q = t on [0, 2]: int 1 dt + int t dt = 2 + 2
  const auto c = sample_curve({"q"}, 0.0, 2.0, 4, [](double t) { return std::vector<double>{t}; });
  EXPECT_DOUBLE_EQ(entropy_action(c, form_of({"q", "t"}, {"1", "q"})), 4.0);
  EXPECT_THROW(entropy_action(c, form_of({"q", "w"}, {"1", "q"})), expr::BindError);
  EXPECT_THROW(entropy_action(c, form_of({"q"}, {"1"}), 5), std::invalid_argument);
}

TEST(Admissibility, IncreasingProductionIsAdmissible) {
  const legendre::ConstitutiveSurface S(ContactChart::canonical(1), Expression::parse("q1^2"),
                                        Expression::parse("q1"));
  const auto r = admissibility(S, line_curve(0, 1));
  EXPECT_TRUE(r.admissible);
  for (const double v : r.rates) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_DOUBLE_EQ(r.delta_sigma, 1.0);
  EXPECT_DOUBLE_EQ(r.delta_U, 1.0);
  EXPECT_EQ(r.delta_s, r.delta_U + r.delta_sigma);

  const auto back = admissibility(S, line_curve(0, 1).reversed());
  EXPECT_FALSE(back.admissible);
  EXPECT_EQ(back.violations.size(), back.rates.size() - 2);  // endpoints excluded
  for (const double v : back.rates) EXPECT_DOUBLE_EQ(v, -1.0);
  const auto with_ends = admissibility(S, line_curve(0, 1).reversed(), kDefaultAdmissibilityTol, true);
  EXPECT_EQ(with_ends.violations.size(), with_ends.rates.size());
}

TEST(Admissibility, ReversibleBoundaryCase) {
  const legendre::ConstitutiveSurface S(ContactChart::canonical(1), Expression::parse("q1^2"),
                                        Expression::parse("0.25"));
  const auto c = line_curve(-1, 2);
  const auto f = admissibility(S, c);
  const auto b = admissibility(S, c.reversed());
  EXPECT_TRUE(f.admissible);
  EXPECT_TRUE(b.admissible);
  for (const double v : f.rates) EXPECT_EQ(v, 0.0);
}

TEST(Admissibility, ReversalNegatesRatesBitwise) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> q{"q1", "q2"};
  for (int k = 0; k < 10; ++k) {
    const legendre::ConstitutiveSurface S(ContactChart::canonical(2),
                                          Expression::parse(oracle::random_polynomial(rng, q, 3, 6)),
                                          Expression::parse(oracle::random_polynomial(rng, q, 3, 6)));
    const double w = 1 + k;
    const auto c = sample_curve(q, 0.0, 1.0, 30, [&](double t) {
      return std::vector<double>{std::sin(w * t), t * t};
    });
    const auto f = admissibility(S, c);
    const auto b = admissibility(S, c.reversed());
    const std::size_t n = f.rates.size();
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(f.rates[i], -b.rates[n - 1 - i]);
  }
}

TEST(Decomposition, LiftedQuadratureMatchesTotals) {
  std::mt19937_64 rng(55);
  const std::vector<std::string> q{"q1", "q2", "q3"};
  for (int k = 0; k < 10; ++k) {
    const legendre::ConstitutiveSurface S(ContactChart::canonical(3),
                                          Expression::parse(oracle::random_polynomial(rng, q, 3, 8)),
                                          Expression::parse(oracle::random_polynomial(rng, q, 3, 8)));
    std::uniform_real_distribution<double> u(-1, 1);
    const double a = u(rng), b = u(rng), c0 = u(rng);
    const auto c = sample_curve(q, 0.0, 1.0, 40, [&](double t) {
      return std::vector<double>{a + t, b * std::cos(2 * t), c0 - t * t};
    });
    const auto r = admissibility(S, c);
    EXPECT_EQ(r.delta_s - (r.delta_U + r.delta_sigma), 0.0);
    const auto lifted = lifted_entropy_change(S, c);
    EXPECT_LE(std::abs(lifted.total() - (r.delta_U + r.delta_sigma)), 1e-6);
    EXPECT_LE(std::abs(lifted.contact_part - r.delta_sigma), 1e-6);
  }
}

TEST(Metric, HandCases) {
  const expr::ScalarField U(Expression::parse("q1^2 + q2^2"), {"q1", "q2"});
  const std::vector<double> x{0.3, -2};
  EXPECT_EQ(thermo_metric(U, x), Eigen::Matrix2d(Eigen::Vector2d(2, 2).asDiagonal()));
  EXPECT_EQ(godograph_det(U, x).det, 4.0);
  EXPECT_FALSE(godograph_det(U, x).degenerate);

  const expr::ScalarField lin(Expression::parse("3*q1 - q2 + 1"), {"q1", "q2"});
  EXPECT_EQ(thermo_metric(lin, x).norm(), 0.0);
  EXPECT_TRUE(godograph_det(lin, x).degenerate);
}

TEST(Metric, VanDerWaalsAgainstFiniteDifferences) {
  const expr::ScalarField U(Expression::parse("(V-0.1)^(2/3)*exp(S/1.5) - 1/V"), {"S", "V"});
  const std::vector<double> x{0.0, 1.0};
  const Eigen::MatrixXd H = thermo_metric(U, x);
  const Eigen::MatrixXd fd = oracle::central_hessian([&](const std::vector<double>& y) { return U.value(y); }, x);
  EXPECT_LE(oracle::max_rel_error(H, fd), 1e-4);
  EXPECT_EQ(godograph_det(U, x).det, H.determinant());
}

TEST(Metric, GodographIsMetricDeterminant) {
  std::mt19937_64 rng(9);
  const std::vector<std::string> q{"a", "b", "c"};
  std::uniform_real_distribution<double> u(0.5, 2);
  for (int k = 0; k < 20; ++k) {
    const expr::ScalarField U(Expression::parse(oracle::random_composite(rng, q, 3)), q);
    const std::vector<double> x{u(rng), u(rng), u(rng)};
    EXPECT_EQ(godograph_det(U, x).det, thermo_metric(U, x).determinant());
  }
}

TEST(Spinodal, VanDerWaalsStandardRelation) {
  const auto roots = vdw::spinodal(vdw::Params{}, 0.0, 0.15, 3.0);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0], 0.2215355902158396, 1e-9);
  const auto lo = vdw::evaluate(vdw::Params{}, 0.0, roots[0] - 1e-3);
  const auto hi = vdw::evaluate(vdw::Params{}, 0.0, roots[0] + 1e-3);
  EXPECT_LT(lo.det * hi.det, 0.0);
}

TEST(Spinodal, PrintedExponentHasNoSignChange) {
  vdw::Params p;
  p.as_printed = true;
  EXPECT_TRUE(vdw::spinodal(p, 0.0, 0.15, 3.0).empty());
  const auto pt = vdw::evaluate(p, 0.0, 1.0);
  EXPECT_NEAR(pt.U, -0.067830248213842340, 1e-15);
  EXPECT_NEAR(pt.T, 0.62144650119077177, 1e-15);
  EXPECT_NEAR(pt.p, -1.6904961124341909, 1e-15);
}

TEST(Spinodal, ScanUtility) {
  const auto r = sign_changes([](double x) { return (x - 0.3) * (x - 1.7); }, 0, 2, 50, 1e-12);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 0.3, 1e-12);
  EXPECT_NEAR(r[1], 1.7, 1e-12);
  EXPECT_THROW(sign_changes([](double x) { return x; }, 1, 0, 5, 1e-6), std::invalid_argument);
}

TEST(RateRelation, BilinearPotentialIsExactOnTheGrid) {
  const expr::ScalarField U(Expression::parse("q1*q2"), {"q1", "q2"});
  const auto c = sample_curve({"q1", "q2"}, 0.0, 1.0, 20, [](double t) { return std::vector<double>{t, t * t}; });
  const auto r = rate_relation_residual(U, c);
  EXPECT_EQ(r.size(), 19u);
  for (const double v : r) EXPECT_LE(v, 1e-12);
}

TEST(RateRelation, ConstantCurve) {
  const expr::ScalarField U(Expression::parse("exp(q1)*q2^3"), {"q1", "q2"});
  const auto c = sample_curve({"q1", "q2"}, 0.0, 1.0, 8, [](double) { return std::vector<double>{0.2, -0.7}; });
  for (const double v : rate_relation_residual(U, c)) EXPECT_EQ(v, 0.0);
}

double max_residual(const expr::ScalarField& U, std::size_t n) {
  const auto c = sample_curve({"q1", "q2"}, 0.0, 1.0, n, [](double t) {
    return std::vector<double>{t, std::exp(0.5 * t)};
  });
  const auto r = rate_relation_residual(U, c);
  return *std::max_element(r.begin(), r.end());
}

TEST(RateRelation, SecondOrderConvergence) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"exp(q1)*q2^2", {"q1", "q2"}}, {"q1^2*q2*t + exp(0.3*t)*q2", {"q1", "q2", "t"}}};
  for (const auto& [text, coords] : cases) {
    const expr::ScalarField U(Expression::parse(text), coords);
    std::vector<double> lh, le;
    for (const std::size_t n : {10u, 20u, 40u, 80u}) {
      lh.push_back(std::log(1.0 / static_cast<double>(n)));
      le.push_back(std::log(max_residual(U, n)));
    }
    EXPECT_NEAR(oracle::fit_slope(lh, le), 2.0, 0.2) << text;
  }
}

TEST(Bookkeeping, SimulatedThermoelasticTrajectory) {
  // int eta along an RK4 trajectory equals the change of the potential
  const std::string text = "ln(eps) + 0.3*F11*F22 - 0.1*F12^2 - 0.2*(H1^2 + H2^2) + 0.05*eps*H3";
  const auto U = Expression::parse(text);
  const thermoelastic::Model m({U, 1.2, 0.8});
  thermoelastic::Forcing f;
  const char* L[9] = {"0.5*t", "0.2", "0", "-0.1", "0.3*t^2", "0", "0", "0.1*t", "-0.4"};
  for (std::size_t i = 0; i < 9; ++i) f.L[i] = material::TimeFunction::parse(L[i]);
  f.divq = material::TimeFunction::parse("0.2 - 0.5*t");
  thermoelastic::State x;
  x.eps = 1.2;
  x.H << 0.4, -0.3, 0.2;
  std::vector<double> times{0.0};
  std::vector<std::vector<double>> pts{x.to_vector()};
  const double dt = 0.01;
  for (int n = 0; n < 100; ++n) {
    x = thermoelastic::step(m, f, x, n * dt, dt);
    times.push_back((n + 1) * dt);
    pts.push_back(x.to_vector());
  }
  const ProcessCurve c(thermoelastic::base_coordinates(), times, pts);
  const auto eta = thermoelastic::entropy_form(thermoelastic::potential_coefficients(U, 1.2), 1.2);
  const double dU = expr::eval(U, c.binding(c.size() - 1)) - expr::eval(U, c.binding(0));
  EXPECT_LE(std::abs(entropy_action(c, eta) - dU), 1e-6 * std::abs(dU));
}

}  // namespace
}  // namespace ctherm::processes
