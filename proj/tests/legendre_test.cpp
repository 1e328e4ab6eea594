#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ctherm/legendre.hpp"
#include "support/oracles.hpp"

namespace ctherm::legendre {
namespace {

using expr::Binding;
using expr::Expression;
using geometry::ContactChart;

ContactChart chart_over(std::vector<std::string> q) {
  std::vector<std::string> p;
  for (const auto& name : q) p.push_back("p_" + name);
  return ContactChart("s", std::move(q), std::move(p));
}

TEST(LegendreEmbed, Quadratic) {
  const LegendreSurface L(ContactChart::canonical(2), Expression::parse("q1^2 + q2^2"));
  const auto x = legendre_embed(L, Binding{{"q1", 1}, {"q2", 2}});
  EXPECT_EQ(x.coords, (std::vector<double>{5, 1, 2, 2, 4}));
}

TEST(LegendreEmbed, VanDerWaals) {
  const LegendreSurface L(chart_over({"S", "V"}), Expression::parse("(V-0.1)^(2/3)*exp(S/1.5) - 1/V"));
  const auto x = legendre_embed(L, Binding{{"S", 0}, {"V", 1}});
  EXPECT_NEAR(x.s(), -0.067830248213842340, 1e-15);
  EXPECT_NEAR(x.p(L.chart(), 0), 0.62144650119077177, 1e-15);  // T
  EXPECT_NEAR(x.p(L.chart(), 1), 1.6904961124341909, 1e-15);   // -p
}

TEST(LegendreEmbed, ConstantPotential) {
  const LegendreSurface L(ContactChart::canonical(3), Expression::constant(2.5));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 5; ++k) {
    const std::vector<double> q{u(rng), u(rng), u(rng)};
    const auto x = legendre_embed(L, q);
    EXPECT_EQ(x.s(), 2.5);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(x.p(L.chart(), i), 0.0);
  }
}

TEST(LegendreEmbed, UnboundBase) {
  const LegendreSurface L(ContactChart::canonical(2), Expression::parse("q1*q2"));
  EXPECT_THROW(legendre_embed(L, Binding{{"q1", 1}}), expr::BindError);
  EXPECT_THROW(LegendreSurface(ContactChart::canonical(1), Expression::parse("q1*q2")), expr::BindError);
}

TEST(LegendreEmbed, PullbackVanishesRandomized) {
  std::mt19937_64 rng(8);
  const std::vector<std::string> q{"q1", "q2", "q3"};
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 20; ++k) {
    const LegendreSurface L(ContactChart::canonical(3), Expression::parse(oracle::random_polynomial(rng, q, 3, 8)));
    for (int m = 0; m < 20; ++m) {
      const std::vector<double> x{u(rng), u(rng), u(rng)};
      EXPECT_LE(legendre_pullback(L, x).cwiseAbs().maxCoeff(), 1e-9);
      // any tangent vector pushed forward by the embedding is horizontal
      const auto pt = legendre_embed(L, x);
      const Eigen::MatrixXd H = L.potential().hessian(x);
      const Eigen::VectorXd g = L.potential().gradient(x);
      for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> v(7, 0.0);
        v[0] = g(static_cast<Eigen::Index>(i));
        v[1 + i] = 1.0;
        for (std::size_t j = 0; j < 3; ++j) v[4 + j] = H(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        EXPECT_LE(std::abs(geometry::contact_eval(L.chart(), pt, v)), 1e-12);
      }
    }
  }
}

TEST(SurfaceEmbed, ShiftOnlyMovesS) {
  const ConstitutiveSurface S(ContactChart::canonical(2), Expression::parse("q1^2 + q2^2"),
                              Expression::parse("0.1*q1"));
  const auto x = surface_embed(S, Binding{{"q1", 1}, {"q2", 2}});
  EXPECT_DOUBLE_EQ(x.s(), 5.1);
  EXPECT_EQ(x.p(S.chart(), 0), 2.0);
  EXPECT_EQ(x.p(S.chart(), 1), 4.0);

  const ConstitutiveSurface Z(ContactChart::canonical(2), Expression::parse("q1^2 + q2^2"), Expression());
  const Binding b{{"q1", -0.3}, {"q2", 0.7}};
  EXPECT_EQ(surface_embed(Z, b), legendre_embed(Z.legendre(), b));
}

TEST(SurfaceEmbed, EqualsReebFlowOfLegendreBitwise) {
  std::mt19937_64 rng(12);
  const std::vector<std::string> q{"q1", "q2"};
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const ConstitutiveSurface S(ContactChart::canonical(2), Expression::parse(oracle::random_polynomial(rng, q, 3, 6)),
                                Expression::parse(oracle::random_polynomial(rng, q, 3, 6)));
    for (int m = 0; m < 10; ++m) {
      const std::vector<double> x{u(rng), u(rng)};
      const auto shifted = geometry::reeb_flow(legendre_embed(S.legendre(), x), S.production().value(x));
      EXPECT_EQ(surface_embed(S, x), shifted);
    }
  }
}

TEST(Pullback, HandCases) {
  const ConstitutiveSurface Z(ContactChart::canonical(2), Expression::parse("q1^2*q2"), Expression());
  EXPECT_EQ(pullback_contact(Z, Binding{{"q1", 0.4}, {"q2", 3}}).norm(), 0.0);

  const ConstitutiveSurface S(ContactChart::canonical(2), Expression::parse("q1^2*q2"), Expression::parse("0.1*q1"));
  const Eigen::VectorXd w = pullback_contact(S, Binding{{"q1", 0.4}, {"q2", 3}});
  EXPECT_NEAR(w(0), 0.1, 1e-15);
  EXPECT_EQ(w(1), 0.0);
}

TEST(Pullback, EqualsDSigmaRandomized) {
  std::mt19937_64 rng(30);
  const std::vector<std::string> q{"q1", "q2", "q3"};
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 20; ++k) {
    const ConstitutiveSurface S(ContactChart::canonical(3), Expression::parse(oracle::random_polynomial(rng, q, 3, 8)),
                                Expression::parse(oracle::random_polynomial(rng, q, 3, 8)));
    for (int m = 0; m < 20; ++m) {
      const std::vector<double> x{u(rng), u(rng), u(rng)};
      const Eigen::VectorXd diff = pullback_contact(S, x) - S.production().gradient(x);
      EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Companion, LiesOnLegendreSurface) {
  const auto chart = ContactChart::canonical(2);
  const auto U = Expression::parse("exp(0.2*q1)*q2 + q2^2");
  const auto sigma = Expression::parse("q1*q2 - 0.3*q2");
  const ConstitutiveSurface S(chart, U, sigma);
  std::vector<Binding> path;
  for (int i = 0; i <= 10; ++i) path.push_back(Binding{{"q1", 0.1 * i}, {"q2", 1.0 - 0.05 * i}});
  const auto comp = reversible_companion(S, path);
  ASSERT_EQ(comp.size(), path.size());
  const ConstitutiveSurface inverse(chart, U, -sigma);
  const auto back = reversible_companion(inverse, path);
  for (std::size_t i = 0; i < path.size(); ++i) {
    EXPECT_EQ(comp[i].s(), expr::eval(U, path[i]));
    const double sig = S.production().value(base_point(chart, path[i]));
    // restoring the shift reproduces the lift exactly
    EXPECT_EQ(geometry::reeb_flow(comp[i], sig), surface_embed(S, path[i]));
    EXPECT_EQ(back[i], comp[i]);
  }

  const ConstitutiveSurface Z(chart, U, Expression());
  const auto zc = reversible_companion(Z, path);
  for (std::size_t i = 0; i < path.size(); ++i) EXPECT_EQ(zc[i], surface_embed(Z, path[i]));
}

TEST(Curvature, HandCase) {
  const GibbsConnection c("s", {"q1", "q2"}, {Expression::parse("s"), Expression::parse("q1")});
  const auto at = [&](double q1) { return connection_curvature(c, Binding{{"s", 0.3}, {"q1", q1}, {"q2", -1}}); };
  EXPECT_EQ(at(0)(0, 1), 1.0);
  EXPECT_EQ(at(1)(0, 1), 0.0);
  EXPECT_EQ(at(0.25)(1, 0), -0.75);
}

TEST(Curvature, ReducesToCurlWithoutS) {
  const GibbsConnection c("s", {"x", "y"}, {Expression::parse("y"), Expression::parse("-x")});
  const Eigen::MatrixXd W = connection_curvature(c, Binding{{"s", 4}, {"x", 1}, {"y", 2}});
  EXPECT_EQ(W(0, 1), -2.0);  // p_{2,x} - p_{1,y}
}

TEST(Curvature, ExactFormsAreFlat) {
  std::mt19937_64 rng(4);
  const std::vector<std::string> q{"q1", "q2", "q3"};
  std::uniform_real_distribution<double> u(0.5, 2);
  for (int k = 0; k < 20; ++k) {
    const auto c = GibbsConnection::exact(Expression::parse(oracle::random_composite(rng, q, 3)), "s", q);
    for (int m = 0; m < 10; ++m) {
      const std::vector<double> x{u(rng), u(rng), u(rng), u(rng)};
      EXPECT_LE(connection_curvature(c, x).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Curvature, MatchesBracketOracle) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> vars{"s", "q1", "q2", "q3"};
  std::uniform_real_distribution<double> u(0.5, 2);
  for (int k = 0; k < 20; ++k) {
    std::vector<Expression> p;
    std::vector<oracle::Fn> fns;
    for (int i = 0; i < 3; ++i) {
      p.push_back(Expression::parse(oracle::random_composite(rng, vars, 2)));
      expr::ScalarField f(p.back(), vars);
      fns.push_back([f](const std::vector<double>& x) { return f.value(x); });
    }
    const GibbsConnection c("s", {"q1", "q2", "q3"}, p);
    const std::vector<double> x{u(rng), u(rng), u(rng), u(rng)};
    const Eigen::MatrixXd W = connection_curvature(c, x);
    EXPECT_EQ((W + W.transpose()).norm(), 0.0);
    EXPECT_LE((W - oracle::bracket_curvature(fns, x)).cwiseAbs().maxCoeff(), 1e-5);
  }
}

}  // namespace
}  // namespace ctherm::legendre
