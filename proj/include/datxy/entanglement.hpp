#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "datxy/correlators.hpp"
#include "datxy/grid.hpp"
#include "datxy/model.hpp"
#include "datxy/quadrature.hpp"

namespace datxy {

/// Nearest-neighbour two-qubit state. Basis |s_e s_o> with |0> = spin up.
struct TwoSiteState {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity() / 4.0;
};

inline constexpr double kPsdSlack = 1e-8;

/// rho = (1/4)[II + m_e ZI + m_o IZ + Cxx XX + Cyy YY + Czz ZZ + Cxy XY + Cyx YX].
/// Throws NotAState when an eigenvalue is below -slack.
TwoSiteState assemble_rdm(const CorrelatorSet& cs, double slack = kPsdSlack);

/// Pauli coefficient Tr[rho (s_a x s_b)] with a, b in {0:I, 1:X, 2:Y, 3:Z}.
double pauli_coefficient(const Eigen::Matrix4cd& rho, int a, int b);

/// Partial transpose on the first (party = 0) or second (party = 1) qubit.
Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho, int party = 0);

double negativity(const TwoSiteState& s, int party = 0);
/// log2(2N + 1); exactly 0 when no partial-transpose eigenvalue is below -1e-12.
double log_negativity(const TwoSiteState& s, int party = 0);

/// LN of the equilibrium nearest-neighbour state at p (p.betaJ decides T).
double equilibrium_ln(const ModelParams& p, const QuadratureSpec& q = {});

enum class FieldAxis { Lambda1, Lambda2 };

/// Central difference [L(x+h) - L(x-h)] / (2h) of the equilibrium LN.
double ent_derivative(const ModelParams& p, FieldAxis which, double h,
                      const QuadratureSpec& q = {});

struct DerivativeLadder {
  std::vector<double> steps;
  std::vector<double> values;  // |dL/dx| at each step
  bool growing = false;        // magnitude still increasing at the smallest step
  double growth = 0.0;         // last / first magnitude
};
DerivativeLadder derivative_ladder(const ModelParams& p, FieldAxis which,
                                   const std::vector<double>& steps = {1e-2, 1e-3, 1e-4},
                                   const QuadratureSpec& q = {});

struct GridPoint {
  int ix = 0;
  int iy = 0;
  double x = 0.0;
  double y = 0.0;
  double ln = 0.0;
};

/// Grid points with LN < eps_L. The grid's fixed betaJ must be +inf.
std::vector<GridPoint> factorization_scan(const Grid2D& grid, double eps_L = 1e-6,
                                          const QuadratureSpec& q = {});

enum class Monotonicity { Monotonic, NonMonotonic };

/// NonMonotonic iff LN(betaJ) has an interior extremum above the 1e-9 noise floor.
Monotonicity thermal_monotonicity(const ModelParams& p, const std::vector<double>& beta_grid,
                                  const QuadratureSpec& q = {});
Monotonicity monotonicity_of(const std::vector<double>& series, double noise = 1e-9);

}  // namespace datxy
