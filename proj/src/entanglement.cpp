#include "datxy/entanglement.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "datxy/blocks.hpp"

namespace datxy {

namespace {

using C2 = Eigen::Matrix2cd;

const std::array<C2, 4>& paulis() {
  static const std::array<C2, 4> P = [] {
    std::array<C2, 4> p;
    const std::complex<double> i(0.0, 1.0);
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -i, i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return P;
}

Eigen::Matrix4cd kron(const C2& a, const C2& b) {
  Eigen::Matrix4cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

}  // namespace

TwoSiteState assemble_rdm(const CorrelatorSet& cs, double slack) {
  const auto& P = paulis();
  Eigen::Matrix4cd r = kron(P[0], P[0]);
  r += cs.mz_e * kron(P[3], P[0]) + cs.mz_o * kron(P[0], P[3]);
  r += cs.cxx * kron(P[1], P[1]) + cs.cyy * kron(P[2], P[2]) + cs.czz * kron(P[3], P[3]);
  r += cs.cxy * kron(P[1], P[2]) + cs.cyx * kron(P[2], P[1]);
  TwoSiteState s;
  s.rho = 0.25 * r;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(s.rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -slack)
    throw NotAState("assembled two-site matrix has eigenvalue " +
                    std::to_string(es.eigenvalues()(0)));
  return s;
}

double pauli_coefficient(const Eigen::Matrix4cd& rho, int a, int b) {
  const auto& P = paulis();
  return (rho * kron(P.at(a), P.at(b))).trace().real();
}

Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho, int party) {
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          const int row = 2 * a + b, col = 2 * ap + bp;
          if (party == 0)
            out(2 * ap + b, 2 * a + bp) = rho(row, col);
          else
            out(2 * a + bp, 2 * ap + b) = rho(row, col);
        }
  return out;
}

double negativity(const TwoSiteState& s, int party) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(partial_transpose(s.rho, party),
                                                     Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i) < -1e-12) neg -= es.eigenvalues()(i);
  return neg;
}

double log_negativity(const TwoSiteState& s, int party) {
  const double n = negativity(s, party);
  if (n == 0.0) return 0.0;
  return std::log2(2.0 * n + 1.0);
}

double equilibrium_ln(const ModelParams& p, const QuadratureSpec& q) {
  return log_negativity(assemble_rdm(equilibrium_correlators(p, q)));
}

double ent_derivative(const ModelParams& p, FieldAxis which, double h, const QuadratureSpec& q) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  ModelParams lo = p, hi = p;
  if (which == FieldAxis::Lambda1) {
    lo.lambda1 -= h;
    hi.lambda1 += h;
  } else {
    lo.lambda2 -= h;
    hi.lambda2 += h;
  }
  return (equilibrium_ln(hi, q) - equilibrium_ln(lo, q)) / (2.0 * h);
}

DerivativeLadder derivative_ladder(const ModelParams& p, FieldAxis which,
                                   const std::vector<double>& steps, const QuadratureSpec& q) {
  DerivativeLadder d;
  d.steps = steps;
  for (double h : steps) d.values.push_back(std::abs(ent_derivative(p, which, h, q)));
  if (d.values.size() >= 2) {
    d.growing = true;
    for (std::size_t i = 1; i < d.values.size(); ++i)
      if (!(d.values[i] > d.values[i - 1])) d.growing = false;
    d.growth = d.values.front() > 0.0 ? d.values.back() / d.values.front() : kInf;
  }
  return d;
}

std::vector<GridPoint> factorization_scan(const Grid2D& grid, double eps_L,
                                          const QuadratureSpec& q) {
  if (!grid.fixed.zero_temperature())
    throw DomainError("factorization scan is defined at zero temperature");
  std::vector<GridPoint> out;
  for (int iy = 0; iy < grid.y.count; ++iy)
    for (int ix = 0; ix < grid.x.count; ++ix) {
      const double ln = equilibrium_ln(grid.at(ix, iy), q);
      if (ln < eps_L) out.push_back({ix, iy, grid.x.value(ix), grid.y.value(iy), ln});
    }
  return out;
}

Monotonicity monotonicity_of(const std::vector<double>& series, double noise) {
  if (series.empty()) return Monotonicity::Monotonic;
  double ref = series.front();
  int dir = 0;
  for (double v : series) {
    if (std::abs(v - ref) <= noise) continue;
    const int s = v > ref ? 1 : -1;
    if (dir != 0 && s != dir) return Monotonicity::NonMonotonic;
    dir = s;
    ref = v;
  }
  return Monotonicity::Monotonic;
}

Monotonicity thermal_monotonicity(const ModelParams& p, const std::vector<double>& beta_grid,
                                  const QuadratureSpec& q) {
  if (beta_grid.size() < 20) throw DomainError("beta grid needs at least 20 points");
  for (std::size_t i = 1; i < beta_grid.size(); ++i)
    if (!(beta_grid[i] > beta_grid[i - 1])) throw DomainError("beta grid must be ascending");
  std::vector<double> ln;
  ln.reserve(beta_grid.size());
  for (double b : beta_grid) ln.push_back(equilibrium_ln(p.with_beta(b), q));
  return monotonicity_of(ln);
}

}  // namespace datxy
