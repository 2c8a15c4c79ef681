#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "datxy/correlators.hpp"
#include "datxy/model.hpp"
#include "datxy/quadrature.hpp"

namespace datxy {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix<cd, 2, 2>;
using Mat4 = Eigen::Matrix<cd, 4, 4>;
using Mat6 = Eigen::Matrix<cd, 6, 6>;
using Mat16 = Eigen::Matrix<cd, 16, 16>;

/// One matrix per invariant block of the 16-dimensional momentum subspace,
/// block sizes 2, 4, 4, 6.
struct BlockList {
  Mat2 b1 = Mat2::Zero();
  Mat4 b2 = Mat4::Zero();
  Mat4 b3 = Mat4::Zero();
  Mat6 b4 = Mat6::Zero();

  Mat16 direct_sum() const;
};

enum class Obs { Cxx = 0, Cyy, Cxy, Cyx, MzE, MzO };
inline constexpr std::size_t kNumObs = 6;
using ObsValues = std::array<double, kNumObs>;

struct MomentumBlockSet {
  double phi = 0.0;
  BlockList H;
  std::array<BlockList, kNumObs> ops;
  const BlockList& op(Obs o) const { return ops[static_cast<std::size_t>(o)]; }
};

/// Hamiltonian blocks at any phi (no range check; the quench code needs the
/// full circle).
BlockList hamiltonian_blocks(const ModelParams& p, double phi);
/// Observable blocks; they depend on phi only.
std::array<BlockList, kNumObs> observable_blocks(double phi);

/// Checked constructor, phi in (0, pi/2].
MomentumBlockSet build_blocks(const ModelParams& p, double phi);

/// The 4x4 single-particle (Bogoliubov) matrix.
Mat4 bdg_matrix(const ModelParams& p, double phi);
/// Sorted eigenvalues of bdg_matrix, units of J.
std::array<double, 4> bdg_bands(const ModelParams& p, double phi);

struct GapResult {
  double gap = 0.0;
  double phi = 0.0;  // location of the minimum
};
/// min over phi in [-pi/2, pi/2] of the smallest |band|, grid plus golden polish.
GapResult min_gap_at(const ModelParams& p, int n_phi = 2048);
double min_gap(const ModelParams& p, int n_phi = 2048);

/// Block-diagonal density matrix of one momentum sector.
struct BlockState {
  BlockList rho;
  bool degenerate_ground = false;
};

/// Equilibrium state of the sector at p.betaJ; betaJ = inf gives the uniform
/// mixture over the ground space of the direct sum.
BlockState equilibrium_block_state(const ModelParams& p, double phi);

/// Re Tr[rho O] for the six observables.
ObsValues block_expectations(const BlockList& rho, const std::array<BlockList, kNumObs>& ops);

/// phi values in (0, pi/2) where the ground state changes: it jumps between
/// blocks, or a single-particle band changes sign.
std::vector<double> ground_block_crossings(const ModelParams& p, int n_scan = 256);

/// Correlators of the alternating-field chain in the thermodynamic limit,
/// (1/pi) times the integral over phi in [0, pi/2] of the sector expectations.
CorrelatorSet thermal_correlators_alt(const ModelParams& p, const QuadratureSpec& q = {});

/// Dispatch: closed forms when lambda2 = 0, block route otherwise.
CorrelatorSet equilibrium_correlators(const ModelParams& p, const QuadratureSpec& q = {});

}  // namespace datxy
