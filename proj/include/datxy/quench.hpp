#pragma once

#include <utility>
#include <vector>

#include "datxy/correlators.hpp"
#include "datxy/model.hpp"
#include "datxy/quadrature.hpp"

namespace datxy {

/// Fields switched off at t = 0; `initial` describes the pre-quench state.
/// Times are dimensionless, t = J t_phys / hbar.
struct QuenchSpec {
  ModelParams initial;
  std::vector<double> t_grid;
  std::pair<double, double> avg_window{80.0 * kPi, 100.0 * kPi};
  void validate() const;
};

struct TimeTrace {
  std::vector<double> t;
  std::vector<CorrelatorSet> values;
  std::vector<double> ln;  // log negativity of the bond state at each t
};

/// n uniform samples on [a, b].
std::vector<double> linear_grid(double a, double b, int n);
/// n log-spaced samples on [a, b], a > 0.
std::vector<double> log_grid(double a, double b, int n);
/// 2001 samples on [0, 100 pi].
std::vector<double> default_time_grid();

struct Kernels {
  double K_minus = 0.0;  // R = -1, integrand of C^xx
  double K_plus = 0.0;   // R = +1, integrand of C^yy
  double S = 0.0;        // integrand of C^xy, C^yx
  double M = 0.0;        // integrand of m^z
};

/// Mode kernels of the uniform-field quench. Each carries its own 1/pi.
Kernels kernels(const ModelParams& p, double t, double phi);

/// Closed-form route for lambda2 = 0, zero-temperature initial state.
TimeTrace evolve_uniform(const QuenchSpec& spec, const QuadratureSpec& q = {});

struct EvolveOptions {
  int order = 16;          // Gauss-Legendre points per panel
  int min_panels = 16;     // per smooth segment
  double panel_scale = 1.0 / 12.0;  // panels per unit of phase 2 t_max (1 + d + |gamma|)
};

/// Block route: per-momentum evolution of the equilibrium sector state under
/// the zero-field blocks, integrated over phi in [0, pi/2].
TimeTrace evolve_alt(const QuenchSpec& spec, const EvolveOptions& opt = {});

/// Trapezoidal mean of the trace's LN over the samples inside `window`.
double time_averaged_ln(const TimeTrace& trace, std::pair<double, double> window);

struct ErgodicityVerdict {
  double lhs = 0.0;  // max over T' of the equilibrium LN at zero field
  double rhs = 0.0;  // long-time average of LN after the quench
  bool ergodic = false;
  double argmax_betaJ = 0.0;
};

/// Samples used for the long-time average: 401 points on the window.
std::vector<double> window_grid(std::pair<double, double> window, int n = 401);

ErgodicityVerdict ergodicity_verdict(const ModelParams& p, const std::vector<double>& betaJ_grid,
                                     std::pair<double, double> window = {80.0 * kPi,
                                                                         100.0 * kPi},
                                     const QuadratureSpec& q = {});

}  // namespace datxy
