#include <gtest/gtest.h>

#include <cmath>

#include "datxy/entanglement.hpp"
#include "datxy/uniform.hpp"
#include "fock_oracle.hpp"

using namespace datxy;

namespace {

ModelParams uxy(double d, double l1, double gamma = 0.8) {
  ModelParams p;
  p.gamma = gamma;
  p.d = d;
  p.lambda1 = l1;
  return p;
}

// Zeros of Lambda(phi) - d sin(phi) on [0, pi] by scanning and bisection.
std::vector<double> scanned_roots(const ModelParams& p) {
  auto g = [&](double phi) { return lambda_of(p.gamma, p.lambda1, phi) - p.d * std::sin(phi); };
  std::vector<double> out;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double a = kPi * i / n, b = kPi * (i + 1) / n;
    if ((g(a) < 0) != (g(b) < 0)) out.push_back(oracle::bisect(g, a, b));
  }
  return out;
}

void expect_close(const CorrelatorSet& a, const CorrelatorSet& b, double tol) {
  EXPECT_NEAR(a.cxx, b.cxx, tol);
  EXPECT_NEAR(a.cyy, b.cyy, tol);
  EXPECT_NEAR(a.cxy, b.cxy, tol);
  EXPECT_NEAR(a.cyx, b.cyx, tol);
  EXPECT_NEAR(a.mz_e, b.mz_e, tol);
  EXPECT_NEAR(a.mz_o, b.mz_o, tol);
}

}  // namespace

TEST(Spectrum, Examples) {
  auto a = spectrum_uniform(uxy(0.0, 0.0), 0.5 * kPi);
  EXPECT_NEAR(a.Lambda, 0.8, 1e-15);
  EXPECT_NEAR(a.omega, 0.8, 1e-15);
  auto b = spectrum_uniform(uxy(1.0, 0.0), -0.5 * kPi);
  EXPECT_NEAR(b.omega, -0.2, 1e-15);
  auto c = spectrum_uniform(uxy(0.5, 1.0), kPi);
  EXPECT_NEAR(c.Lambda, 0.0, 1e-15);
  EXPECT_NEAR(c.omega, 0.0, 1e-15);
}

TEST(Spectrum, RejectsAlternatingField) {
  ModelParams p = uxy(0.5, 0.3);
  p.lambda2 = 0.1;
  EXPECT_THROW(spectrum_uniform(p, 0.3), DomainError);
  EXPECT_THROW(zero_T_correlators_uniform(p), DomainError);
  EXPECT_THROW(thermal_correlators_uniform(p.with_beta(1.0)), DomainError);
}

TEST(Spectrum, LambdaInvariants) {
  oracle::Gen g(3);
  for (int k = 0; k < 500; ++k) {
    const ModelParams p = uxy(g.uniform(0, 2), g.uniform(-2, 2), g.uniform(0.05, 1.2));
    const double phi = g.uniform(-kPi, kPi);
    const auto dp = spectrum_uniform(p, phi);
    EXPECT_GE(dp.Lambda, 0.0);
    const double ref = std::sqrt(std::pow(std::cos(phi) + p.lambda1, 2) +
                                 std::pow(p.gamma * std::sin(phi), 2));
    EXPECT_NEAR(dp.Lambda, ref, 1e-14);
    EXPECT_NEAR(dp.omega, p.d * std::sin(phi) + ref, 1e-14);
  }
}

TEST(RootPair, StrongDMExample) {
  const RootPair r = root_pair(uxy(1.0, 0.0));
  ASSERT_TRUE(r.real_solutions);
  const double c = std::sqrt(0.36 / 1.36);
  EXPECT_NEAR(std::cos(r.phi1), c, 1e-12);
  EXPECT_NEAR(std::cos(r.phi2), -c, 1e-12);
  EXPECT_NEAR(r.phi1, 1.0298, 1e-3);
  EXPECT_NEAR(r.phi2, 2.1118, 1e-3);
  const auto s = scanned_roots(uxy(1.0, 0.0));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(r.phi1, s[0], 1e-10);
  EXPECT_NEAR(r.phi2, s[1], 1e-10);
}

TEST(RootPair, NoRealPairOutsideTheChiralWindow) {
  EXPECT_FALSE(root_pair(uxy(0.5, 0.0)).real_solutions);
  EXPECT_FALSE(root_pair(uxy(1.0, 2.0)).real_solutions);
  EXPECT_FALSE(root_pair(uxy(0.8, 0.3)).real_solutions);
}

TEST(RootPair, MatchesBisectionOracle) {
  oracle::Gen g(4);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const double gamma = g.uniform(0.1, 1.0);
    const ModelParams p = uxy(g.uniform(gamma + 0.05, 2.0), g.uniform(-1.5, 1.5), gamma);
    const RootPair r = root_pair(p);
    const double A = 1 + p.d * p.d - gamma * gamma;
    EXPECT_EQ(r.real_solutions, p.lambda1 * p.lambda1 <= A);
    if (!r.real_solutions) continue;
    EXPECT_LE(0.0, r.phi1);
    EXPECT_LE(r.phi1, r.phi2);
    EXPECT_LE(r.phi2, kPi);
    const auto s = scanned_roots(p);
    if (s.size() != 2 || s[1] - s[0] < 1e-3) continue;
    EXPECT_NEAR(r.phi1, s[0], 1e-9);
    EXPECT_NEAR(r.phi2, s[1], 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(RootPair, TangencyGivesCoincidentRoots) {
  const double A = 1 + 1.0 - 0.64;
  const RootPair r = root_pair(uxy(1.0, std::sqrt(A)));
  ASSERT_TRUE(r.real_solutions);
  EXPECT_NEAR(r.phi1, r.phi2, 1e-6);
  EXPECT_NEAR(lambda_of(0.8, std::sqrt(A), r.phi1) - std::sin(r.phi1), 0.0, 1e-10);
}

TEST(ZeroT, MatchesFockMomentumSum) {
  for (auto [d, l1] : std::vector<std::pair<double, double>>{
           {0.0, 0.3}, {0.5, 0.9}, {0.3, 1.6}, {1.0, 0.0}, {1.2, 0.5}, {1.0, 2.0}}) {
    const ModelParams p = uxy(d, l1);
    // The midpoint sum converges only at first order across the occupation jumps.
    expect_close(zero_T_correlators_uniform(p), oracle::fock_correlators(p, 4000), 1e-3);
  }
}

TEST(ZeroT, ChiralCorrelatorAtStrongDM) {
  const CorrelatorSet cs = zero_T_correlators_uniform(uxy(1.0, 0.0));
  EXPECT_NEAR(cs.cxy, -0.3276, 1e-4);
  EXPECT_NEAR(cs.cyx, 0.3276, 1e-4);
  EXPECT_EQ(cs.branch, "chiral");
}

TEST(ZeroT, InsensitiveToWeakDM) {
  oracle::Gen g(5);
  for (int k = 0; k < 40; ++k) {
    const double l1 = g.uniform(-2.0, 2.0);
    const CorrelatorSet a = zero_T_correlators_uniform(uxy(0.0, l1));
    const CorrelatorSet b = zero_T_correlators_uniform(uxy(g.uniform(0.0, 0.79), l1));
    expect_close(a, b, 1e-9);
    EXPECT_NEAR(a.czz, b.czz, 1e-9);
  }
}

TEST(ZeroT, CrossCorrelatorsAntisymmetric) {
  oracle::Gen g(6);
  for (int k = 0; k < 40; ++k) {
    const CorrelatorSet cs = zero_T_correlators_uniform(uxy(g.uniform(0, 2), g.uniform(-2, 2)));
    EXPECT_EQ(cs.cxy, -cs.cyx);
    EXPECT_EQ(cs.mz_e, cs.mz_o);
    EXPECT_NEAR(cs.czz, cs.wick_czz(), 1e-15);
  }
}

TEST(ZeroT, FactorizationPointIsAProductState) {
  for (double d : {0.0, 0.3, 0.7}) {
    const CorrelatorSet cs = zero_T_correlators_uniform(uxy(d, 0.6));
    EXPECT_EQ(log_negativity(assemble_rdm(cs)), 0.0);
    // Product of two identical single-site states.
    EXPECT_NEAR(cs.czz, cs.mz_e * cs.mz_o, 1e-9);
  }
}

TEST(ZeroT, MatchesKronChainAtLargeN) {
  // Finite chains converge to the momentum integral away from criticality.
  const ModelParams p = uxy(0.4, 0.5);
  const auto rho = oracle::kron_state(oracle::kron_hamiltonian(p, 8, true), kInf);
  const CorrelatorSet ed = oracle::kron_bond(rho, 8);
  const CorrelatorSet cs = zero_T_correlators_uniform(p);
  EXPECT_NEAR(cs.cxx, ed.cxx, 5e-2);
  EXPECT_NEAR(cs.cyy, ed.cyy, 5e-2);
  EXPECT_NEAR(cs.mz_e, ed.mz_e, 5e-2);
}

TEST(Thermal, MatchesFockMomentumSum) {
  for (auto [d, l1, b] : std::vector<std::tuple<double, double, double>>{
           {0.4, 0.6, 2.0}, {1.2, 0.5, 5.0}, {0.0, 1.0, 0.5}, {0.9, 0.0, 30.0}}) {
    const ModelParams p = uxy(d, l1).with_beta(b);
    expect_close(thermal_correlators_uniform(p), oracle::fock_correlators(p, 3000), 1e-6);
  }
}

TEST(Thermal, InfiniteTemperatureIsFeatureless) {
  const CorrelatorSet cs = thermal_correlators_uniform(uxy(0.7, 0.4).with_beta(0.0));
  EXPECT_NEAR(cs.cxx, 0.0, 1e-14);
  EXPECT_NEAR(cs.cyy, 0.0, 1e-14);
  EXPECT_NEAR(cs.cxy, 0.0, 1e-14);
  EXPECT_NEAR(cs.mz_e, 0.0, 1e-14);
}

TEST(Thermal, LowTemperatureApproachesGroundState) {
  for (double d : {0.3, 1.2}) {
    const ModelParams p = uxy(d, 0.4);
    expect_close(thermal_correlators_uniform(p.with_beta(400.0)), zero_T_correlators_uniform(p),
                 2e-3);
  }
}

TEST(Thermal, HugeBetaDoesNotOverflow) {
  const CorrelatorSet cs = thermal_correlators_uniform(uxy(1.0, 0.2).with_beta(1e6));
  EXPECT_TRUE(std::isfinite(cs.cxx));
  EXPECT_TRUE(std::isfinite(cs.cxy));
  EXPECT_THROW(thermal_correlators_uniform(uxy(1.0, 0.2)), DomainError);
}
