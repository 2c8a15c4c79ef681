#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace datxy {

// Error taxonomy shared by every module.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DomainError : public Error {
 public:
  using Error::Error;
};
class NonConvergence : public Error {
 public:
  using Error::Error;
};
class ResourceLimit : public Error {
 public:
  using Error::Error;
};
class NotAState : public Error {
 public:
  using Error::Error;
};
class EmptyWindow : public Error {
 public:
  using Error::Error;
};
class Unclassified : public Error {
 public:
  using Error::Error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

/// Dimensionless couplings of the XY chain with DM interaction and
/// uniform + alternating transverse fields. Energies are measured in units
/// of J; betaJ = +inf is the zero-temperature state.
struct ModelParams {
  double gamma = 0.8;    // x-y anisotropy, nonzero
  double d = 0.0;        // DM strength D/J
  double lambda1 = 0.0;  // uniform field h1/J
  double lambda2 = 0.0;  // alternating field h2/J
  double J = 1.0;
  double betaJ = kInf;

  bool zero_temperature() const { return std::isinf(betaJ); }
  bool uniform_field() const { return lambda2 == 0.0; }

  // Throws DomainError when an invariant is broken.
  void validate() const;

  ModelParams with_fields(double l1, double l2) const {
    ModelParams p = *this;
    p.lambda1 = l1;
    p.lambda2 = l2;
    return p;
  }
  ModelParams with_beta(double b) const {
    ModelParams p = *this;
    p.betaJ = b;
    return p;
  }
  ModelParams with_d(double dm) const {
    ModelParams p = *this;
    p.d = dm;
    return p;
  }
};

enum class Regime { WeakDM, Boundary, StrongDM };

inline constexpr double kRegimeEps = 1e-12;

Regime classify_regime(const ModelParams& p, double eps = kRegimeEps);
std::string to_string(Regime r);

}  // namespace datxy
