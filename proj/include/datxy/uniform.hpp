#pragma once

#include "datxy/correlators.hpp"
#include "datxy/model.hpp"
#include "datxy/quadrature.hpp"

namespace datxy {

/// Lambda(x, phi) = sqrt((x + cos phi)^2 + gamma^2 sin^2 phi).
double lambda_of(double gamma, double x, double phi);

struct DispersionPoint {
  double phi = 0.0;
  double omega = 0.0;   // units of J
  double Lambda = 0.0;  // Lambda(lambda1, phi)
};

/// Single-particle energy of the uniform-field chain, omega = J(d sin phi + Lambda).
DispersionPoint spectrum_uniform(const ModelParams& p, double phi);

struct RootPair {
  double phi1 = 0.0;
  double phi2 = 0.0;
  bool real_solutions = false;
};

/// Zeros of omega(-phi) in [0, pi]. Only StrongDM points with
/// lambda1^2 <= 1 + d^2 - gamma^2 carry a real pair.
RootPair root_pair(const ModelParams& p);

/// Ground-state correlators for lambda2 = 0.
CorrelatorSet zero_T_correlators_uniform(const ModelParams& p, const QuadratureSpec& q = {});

/// Thermal correlators for lambda2 = 0 at finite betaJ.
CorrelatorSet thermal_correlators_uniform(const ModelParams& p, const QuadratureSpec& q = {});

}  // namespace datxy
