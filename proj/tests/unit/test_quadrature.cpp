#include <gtest/gtest.h>

#include <cmath>

#include "datxy/quadrature.hpp"
#include "fock_oracle.hpp"

using namespace datxy;

namespace {

double lam(double x, double phi, double g = 0.8) {
  return std::sqrt((x + std::cos(phi)) * (x + std::cos(phi)) + g * g * std::sin(phi) * std::sin(phi));
}

// Plain midpoint sum, the high-resolution reference.
double midpoint(const std::function<double(double)>& f, double a, double b, long n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (long i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

}  // namespace

TEST(Quadrature, SineOverHalfPeriod) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, kPi, QuadratureSpec{}), 2.0, 1e-10);
}

TEST(Quadrature, ZeroFunction) {
  EXPECT_EQ(integrate([](double) { return 0.0; }, 0.0, kPi, QuadratureSpec{}), 0.0);
}

TEST(Quadrature, EmptyInterval) {
  EXPECT_EQ(integrate([](double x) { return x; }, 1.0, 1.0, QuadratureSpec{}), 0.0);
}

TEST(Quadrature, CriticalMagnetizationIntegrand) {
  // At lambda1 = 1 the quasiparticle energy vanishes at phi = pi.
  auto f = [](double phi) { return (1.0 + std::cos(phi)) / lam(1.0, phi); };
  const double ref = midpoint(f, 0.0, kPi, 10'000'000);
  EXPECT_NEAR(integrate(f, 0.0, kPi, QuadratureSpec{}), ref, 1e-9);
}

TEST(Quadrature, LogSingularityAtTheGaplessPoint) {
  auto f = [](double phi) { return std::log(lam(1.0, phi)); };
  const double ref = midpoint(f, 0.0, kPi, 10'000'000);
  // The midpoint reference itself carries an O(h log h) error.
  EXPECT_NEAR(integrate(f, 0.0, kPi, QuadratureSpec{}), ref, 1e-5);
}

TEST(Quadrature, LinearityOnRandomPolynomials) {
  oracle::Gen g(7);
  const QuadratureSpec q;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> cf(g.integer(1, 12)), cg(g.integer(1, 12));
    for (double& c : cf) c = g.uniform(-3, 3);
    for (double& c : cg) c = g.uniform(-3, 3);
    auto poly = [](const std::vector<double>& c, double x) {
      double s = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
      return s;
    };
    const double a = g.uniform(-2, 0), b = g.uniform(0, 2);
    const double al = g.uniform(-2, 2), be = g.uniform(-2, 2);
    auto f = [&](double x) { return poly(cf, x); };
    auto h = [&](double x) { return poly(cg, x); };
    auto lin = [&](double x) { return al * f(x) + be * h(x); };
    const double lhs = integrate(lin, a, b, q);
    const double rhs = al * integrate(f, a, b, q) + be * integrate(h, a, b, q);
    EXPECT_NEAR(lhs, rhs, 10 * q.abs_tol);
  }
}

TEST(Quadrature, ComponentsIntegrateTogether) {
  auto f = [](double x) { return std::array<double, 3>{std::sin(x), std::cos(x), x * x}; };
  const auto r = integrate_components<3>(f, 0.0, kPi, QuadratureSpec{});
  EXPECT_NEAR(r.value[0], 2.0, 1e-10);
  EXPECT_NEAR(r.value[1], 0.0, 1e-10);
  EXPECT_NEAR(r.value[2], kPi * kPi * kPi / 3.0, 1e-10);
  EXPECT_GT(r.evaluations, 0u);
}

TEST(Quadrature, BreakpointsSplitAKink) {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const std::vector<double> br{0.3};
  const double v = integrate(f, 0.0, 1.0, QuadratureSpec{}, br);
  EXPECT_NEAR(v, 0.5 * (0.09 + 0.49), 1e-13);
}

TEST(Quadrature, DepthBudgetRaisesNonConvergence) {
  QuadratureSpec q;
  q.max_depth = 1;
  q.abs_tol = 1e-14;
  auto f = [](double x) { return std::sqrt(std::abs(x - 0.3)); };
  EXPECT_THROW(integrate(f, 0.0, 1.0, q), NonConvergence);
}

TEST(Quadrature, SpecValidation) {
  QuadratureSpec q;
  q.abs_tol = 0.0;
  EXPECT_THROW(q.validate(), DomainError);
  q = QuadratureSpec{};
  q.rel_tol = -1;
  EXPECT_THROW(q.validate(), DomainError);
  q = QuadratureSpec{};
  q.max_depth = 0;
  EXPECT_THROW(q.validate(), DomainError);
}

TEST(Quadrature, Deterministic) {
  auto f = [](double x) { return std::exp(-x) * std::cos(7 * x); };
  EXPECT_EQ(integrate(f, 0.0, 3.0, QuadratureSpec{}), integrate(f, 0.0, 3.0, QuadratureSpec{}));
}

TEST(GaussLegendre, ExactForPolynomialsOfDegree2nMinus1) {
  for (int n : {1, 2, 5, 16}) {
    const FixedRule r = gauss_legendre(n);
    ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "n=" << n << " deg=" << deg;
    }
  }
  EXPECT_THROW(gauss_legendre(0), DomainError);
}

TEST(GaussLegendre, CompositeRuleCoversTheCuts) {
  const std::vector<double> cuts{0.0, 0.4, 1.5};
  const FixedRule r = composite_gauss_legendre(cuts, 10.0, 2);
  double w = 0, m = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    w += r.weights[i];
    m += r.weights[i] * std::abs(r.nodes[i] - 0.4);
  }
  EXPECT_NEAR(w, 1.5, 1e-13);
  EXPECT_NEAR(m, 0.5 * (0.16 + 1.21), 1e-13);
  const std::vector<double> one{0.0};
  EXPECT_THROW(composite_gauss_legendre(one, 1.0, 1), DomainError);
}
