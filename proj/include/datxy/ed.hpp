#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "datxy/correlators.hpp"
#include "datxy/model.hpp"

namespace datxy {

enum class Boundary { Periodic, Open };

inline constexpr int kMaxEDSites = 12;

/// Spin-1/2 chain of N sites for brute-force checks. Site j = 0..N-1 is the
/// physical site j+1, so index 1 is the first even site. Basis states are
/// bitstrings with bit j set when spin j points up.
struct SpinChainED {
  ModelParams params;
  int N = 8;
  Boundary boundary = Boundary::Periodic;
  double hx = 0.0;  // staggered x field, sum_j (-1)^(j+1) hx sx_j

  SpinChainED(const ModelParams& p, int n, Boundary b = Boundary::Periodic, double h = 0.0);
  std::size_t dim() const { return std::size_t{1} << N; }
};

/// coef * prod_k sigma^{ops[k].second}_{ops[k].first}, with op in {'x','y','z'}.
struct PauliString {
  std::complex<double> coef = 1.0;
  std::vector<std::pair<int, char>> ops;

  // Image of a basis state: returns (state', amplitude).
  std::pair<std::uint32_t, std::complex<double>> act(std::uint32_t s) const;
};
using PauliSum = std::vector<PauliString>;

/// Terms of the chain Hamiltonian (with the hx field when nonzero).
PauliSum hamiltonian_terms(const SpinChainED& ed);

/// Translation-averaged bond operators over the (even, next odd) pairs, and
/// the sublattice magnetizations.
PauliSum bond_average(const SpinChainED& ed, char a, char b);
PauliSum sublattice_mz(const SpinChainED& ed, bool even);

void apply(const PauliSum& op, const Eigen::VectorXcd& in, Eigen::VectorXcd& out);
std::complex<double> expect(const PauliSum& op, const Eigen::VectorXcd& psi);
Eigen::MatrixXcd dense_matrix(const PauliSum& op, int N);
Eigen::SparseMatrix<std::complex<double>> sparse_matrix(const PauliSum& op, int N);

/// Equilibrium correlators of the (even, odd) bond, averaged over the N/2
/// equivalent bonds. betaJ = inf averages over the ground space. C^zz is
/// measured directly. Periodic chains with hx = 0 use momentum/parity
/// sectors; other cases use a dense eigensolve (N <= 10).
CorrelatorSet ed_thermal_correlators(const SpinChainED& ed, double betaJ);

struct EDTrace {
  std::vector<double> t;
  std::vector<CorrelatorSet> values;
  std::vector<double> post_energy;  // <H'>(t)
  std::vector<double> norm;         // trace of the evolved state
};

/// Start in the ground space of ed's Hamiltonian (uniform mixture when
/// degenerate) and evolve with the zero-field Hamiltonian. Periodic, hx = 0.
EDTrace ed_quench(const SpinChainED& ed, const std::vector<double>& t_grid);

struct LanczosResult {
  double energy = 0.0;
  Eigen::VectorXcd vector;
  int iterations = 0;
};
/// Lowest eigenpair by Lanczos with full reorthogonalisation.
LanczosResult ground_state_lanczos(const SpinChainED& ed, double tol = 1e-10);

/// |(1/N) sum_j (-1)^(j+1) <sx_j>| in the Lanczos ground state.
double staggered_mx_of(const SpinChainED& ed);

}  // namespace datxy
