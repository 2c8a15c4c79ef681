#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "datxy/blocks.hpp"
#include "datxy/entanglement.hpp"
#include "datxy/quench.hpp"
#include "datxy/uniform.hpp"
#include "fock_oracle.hpp"

using namespace datxy;

namespace {

ModelParams at(double d, double l1, double l2 = 0.0) {
  ModelParams p;
  p.d = d;
  p.lambda1 = l1;
  p.lambda2 = l2;
  return p;
}

QuenchSpec spec_of(const ModelParams& p, std::vector<double> t) {
  QuenchSpec s;
  s.initial = p;
  s.t_grid = std::move(t);
  return s;
}

void expect_close(const CorrelatorSet& a, const CorrelatorSet& b, double tol) {
  EXPECT_NEAR(a.cxx, b.cxx, tol);
  EXPECT_NEAR(a.cyy, b.cyy, tol);
  EXPECT_NEAR(a.cxy, b.cxy, tol);
  EXPECT_NEAR(a.cyx, b.cyx, tol);
  EXPECT_NEAR(a.mz_e, b.mz_e, tol);
  EXPECT_NEAR(a.mz_o, b.mz_o, tol);
}

// Fock-space evolution of one momentum sector: ground state of H(p), evolved
// with the zero-field sector Hamiltonian, then (1/pi) * midpoint sum over phi.
CorrelatorSet fock_quench(const ModelParams& p, double t, int M) {
  std::array<double, 6> acc{};
  const double h = 0.5 * kPi / M;
  for (int i = 0; i < M; ++i) {
    const double phi = (i + 0.5) * h;
    Eigen::SelfAdjointEigenSolver<oracle::M16> es0(oracle::fock_hamiltonian(p, phi));
    const Eigen::Matrix<std::complex<double>, 16, 1> g0 = es0.eigenvectors().col(0);
    Eigen::SelfAdjointEigenSolver<oracle::M16> es1(
        oracle::fock_hamiltonian(p.with_fields(0, 0), phi));
    Eigen::Matrix<std::complex<double>, 16, 1> c = es1.eigenvectors().adjoint() * g0;
    for (int k = 0; k < 16; ++k) c(k) *= std::exp(std::complex<double>(0, -es1.eigenvalues()(k) * t));
    const Eigen::Matrix<std::complex<double>, 16, 1> psi = es1.eigenvectors() * c;
    const auto O = oracle::fock_observables(phi);
    for (int k = 0; k < 6; ++k) acc[k] += (psi.adjoint() * O[k] * psi)(0, 0).real() * h / kPi;
  }
  CorrelatorSet cs;
  cs.cxx = acc[0];
  cs.cyy = acc[1];
  cs.cxy = acc[2];
  cs.cyx = acc[3];
  cs.mz_e = acc[4];
  cs.mz_o = acc[5];
  return cs;
}

}  // namespace

TEST(Kernels, ZeroFieldHasNoChiralKernel) {
  oracle::Gen g(51);
  for (int k = 0; k < 100; ++k)
    EXPECT_EQ(kernels(at(0.3, 0.0), g.uniform(0, 50), g.uniform(0.01, 3.1)).S, 0.0);
}

TEST(Kernels, StaticLimitIsTheGroundStateIntegrand) {
  oracle::Gen g(52);
  for (int k = 0; k < 100; ++k) {
    const double l1 = g.uniform(-2, 2), phi = g.uniform(0.01, 3.1);
    const double L = lambda_of(0.8, l1, phi);
    EXPECT_NEAR(kernels(at(0.0, l1), 0.0, phi).M, -(l1 + std::cos(phi)) / (kPi * L), 1e-12);
  }
}

TEST(Kernels, RemovablePointIsFinite) {
  // Lambda(lambda1 = 1) vanishes at phi = pi.
  const Kernels k = kernels(at(0.0, 1.0), 2.0, kPi);
  EXPECT_TRUE(std::isfinite(k.K_minus));
  EXPECT_TRUE(std::isfinite(k.M));
  EXPECT_THROW(kernels(at(0.0, 1.0, 0.1), 0.0, 1.0), DomainError);
}

TEST(Kernels, MatchSingleModeEvolution) {
  // Integrating the kernels of the uniform chain equals the per-mode Fock
  // evolution over the same momenta.
  const ModelParams p = at(0.0, 0.5);
  for (double t : {0.0, 1.0, 3.0}) {
    const CorrelatorSet ref = fock_quench(p, t, 2000);
    const TimeTrace tr = evolve_uniform(spec_of(p, {t}));
    expect_close(tr.values[0], ref, 1e-5);
  }
}

TEST(Evolve, ContinuousAtTimeZero) {
  for (auto p : {at(0.3, 0.5), at(1.2, 0.4), at(0.0, 1.4), at(1.0, 0.0)}) {
    const TimeTrace a = evolve_uniform(spec_of(p, {0.0}));
    expect_close(a.values[0], zero_T_correlators_uniform(p), 1e-8);
  }
  for (auto p : {at(0.5, 0.4, 0.3), at(1.2, 0.5, 0.2)}) {
    const TimeTrace b = evolve_alt(spec_of(p, {0.0}));
    expect_close(b.values[0], thermal_correlators_alt(p), 1e-8);
  }
}

TEST(Evolve, BlockRouteReducesToClosedForm) {
  const std::vector<double> ts{0.0, 0.5, 2.0, 7.0, 30.0};
  for (auto p : {at(0.3, 0.5), at(1.2, 0.5), at(1.0, 0.2), at(0.0, 1.5)}) {
    const TimeTrace a = evolve_uniform(spec_of(p, ts));
    const TimeTrace b = evolve_alt(spec_of(p, ts));
    for (std::size_t i = 0; i < ts.size(); ++i) expect_close(a.values[i], b.values[i], 1e-7);
  }
}

TEST(Evolve, MatchesFockSectorEvolutionWithAlternatingField) {
  const ModelParams p = at(0.9, 0.5, 0.3);
  for (double t : {0.7, 4.0}) {
    const TimeTrace tr = evolve_alt(spec_of(p, {t}));
    expect_close(tr.values[0], fock_quench(p, t, 2000), 1e-4);
  }
}

TEST(Evolve, ZeroFieldStartIsStationary) {
  for (double d : {0.3, 1.2}) {
    const TimeTrace tr = evolve_alt(spec_of(at(d, 0.0), linear_grid(0, 50, 11)));
    for (const auto& cs : tr.values) expect_close(cs, tr.values[0], 1e-12);
    for (double ln : tr.ln) EXPECT_NEAR(ln, tr.ln[0], 1e-12);
  }
}

TEST(Evolve, WeakDMTracesCoincide) {
  const std::vector<double> ts{0.0, 1.0, 4.0, 20.0};
  const TimeTrace a = evolve_uniform(spec_of(at(0.1, 0.7), ts));
  const TimeTrace b = evolve_uniform(spec_of(at(0.6, 0.7), ts));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    expect_close(a.values[i], b.values[i], 1e-8);
    EXPECT_NEAR(a.ln[i], b.ln[i], 1e-8);
  }
}

TEST(Evolve, SectorStatesStayUnitary) {
  // Tr and spectrum of the evolved block state do not change.
  const ModelParams p = at(1.2, 0.5, 0.5);
  const double phi = 0.9;
  const BlockState st = equilibrium_block_state(p, phi);
  const Mat16 rho0 = st.rho.direct_sum();
  Eigen::SelfAdjointEigenSolver<Mat16> es(hamiltonian_blocks(p.with_fields(0, 0), phi).direct_sum());
  const auto e0 = Eigen::SelfAdjointEigenSolver<Mat16>(rho0).eigenvalues();
  for (double t : {0.3, 10.0, 300.0}) {
    Eigen::Matrix<std::complex<double>, 16, 1> ph;
    for (int i = 0; i < 16; ++i) ph(i) = std::exp(std::complex<double>(0, -es.eigenvalues()(i) * t));
    const Mat16 U = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    const Mat16 r = U * rho0 * U.adjoint();
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-12);
    const auto e = Eigen::SelfAdjointEigenSolver<Mat16>(r).eigenvalues();
    EXPECT_LT((e - e0).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Evolve, ValidatesSpec) {
  EXPECT_THROW(evolve_alt(spec_of(at(0, 0.5), {})), DomainError);
  EXPECT_THROW(evolve_alt(spec_of(at(0, 0.5), {1.0, 0.5})), DomainError);
  EXPECT_THROW(evolve_uniform(spec_of(at(0, 0.5, 0.2), {0.0})), DomainError);
  EXPECT_THROW(evolve_uniform(spec_of(at(0, 0.5).with_beta(1.0), {0.0})), DomainError);
}

TEST(TimeAverage, ConstantTrace) {
  TimeTrace tr;
  tr.t = linear_grid(0, 10, 21);
  tr.ln.assign(21, 0.37);
  EXPECT_NEAR(time_averaged_ln(tr, {2.0, 8.0}), 0.37, 1e-15);
  EXPECT_THROW(time_averaged_ln(tr, {20.0, 30.0}), EmptyWindow);
}

TEST(TimeAverage, TrapezoidOnALinearRamp) {
  TimeTrace tr;
  tr.t = linear_grid(0, 4, 9);
  for (double t : tr.t) tr.ln.push_back(2 * t);
  EXPECT_NEAR(time_averaged_ln(tr, {0.0, 4.0}), 4.0, 1e-14);
}

TEST(TimeAverage, UnperturbedStartKeepsEquilibriumValue) {
  for (double beta : {3.0, kInf}) {
    // At T = 0 the zero-field chiral chain is gapless; the ground state has kinks in phi.
    const ModelParams p = at(1.2, 0.0).with_beta(beta);
    QuenchSpec s = spec_of(p, window_grid({80 * kPi, 100 * kPi}, 41));
    const double avg = time_averaged_ln(evolve_alt(s), s.avg_window);
    EXPECT_NEAR(avg, equilibrium_ln(p), 1e-9) << beta;
  }
}

TEST(TimeAverage, StrongDMSustainsMoreEntanglement) {
  const auto ts = window_grid({80 * kPi, 100 * kPi});
  const double d0 = time_averaged_ln(evolve_alt(spec_of(at(0.0, 0.5, 0.5), ts)), {80 * kPi, 100 * kPi});
  const double d12 = time_averaged_ln(evolve_alt(spec_of(at(1.2, 0.5, 0.5), ts)), {80 * kPi, 100 * kPi});
  EXPECT_GT(d12, d0);
  const double d08 = time_averaged_ln(evolve_alt(spec_of(at(0.8, 0.5, 0.5), ts)), {80 * kPi, 100 * kPi});
  EXPECT_GT(d08, 0.0);
}

TEST(Ergodicity, HoldsOnASmallGrid) {
  const auto betas = log_grid(0.1, 100, 41);
  for (double d : {0.4, 0.8, 1.2})
    for (auto [l1, l2] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {1.2, 0.3}}) {
      const ErgodicityVerdict v = ergodicity_verdict(at(d, l1, l2), betas);
      EXPECT_TRUE(v.ergodic) << d << " " << l1 << " " << l2 << " lhs=" << v.lhs
                             << " rhs=" << v.rhs;
      EXPECT_GE(v.rhs, 0.0);
    }
}

TEST(Ergodicity, UnperturbedStartIsBoundedByTheMaximum) {
  // No quench: the average is the initial equilibrium value, which is one of the candidates.
  const auto betas = log_grid(0.1, 100, 41);
  const ModelParams p = at(0.5, 0.0).with_beta(100.0);
  const ErgodicityVerdict v = ergodicity_verdict(p, betas);
  EXPECT_TRUE(v.ergodic);
  EXPECT_NEAR(v.rhs, equilibrium_ln(p), 1e-10);
  EXPECT_GE(v.lhs, v.rhs);
  EXPECT_THROW(ergodicity_verdict(at(0.5, 0.0), {}), DomainError);
}

TEST(Grids, Shapes) {
  const auto g = default_time_grid();
  ASSERT_EQ(g.size(), 2001u);
  EXPECT_DOUBLE_EQ(g.back(), 100 * kPi);
  const auto lg = log_grid(0.1, 100, 41);
  EXPECT_DOUBLE_EQ(lg.front(), 0.1);
  EXPECT_DOUBLE_EQ(lg.back(), 100);
  EXPECT_NEAR(lg[20], std::sqrt(10.0), 1e-12);
  EXPECT_THROW(log_grid(0.0, 1.0, 3), DomainError);
  EXPECT_THROW(linear_grid(0.0, 1.0, 0), DomainError);
}
