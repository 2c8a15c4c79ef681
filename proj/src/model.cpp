#include "datxy/model.hpp"

#include "datxy/grid.hpp"

namespace datxy {

void ModelParams::validate() const {
  if (!std::isfinite(gamma) || gamma == 0.0)
    throw DomainError("gamma must be finite and nonzero");
  if (!std::isfinite(d) || d < 0.0) throw DomainError("d must be finite and >= 0");
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2))
    throw DomainError("fields must be finite");
  if (!std::isfinite(J) || J <= 0.0) throw DomainError("J must be finite and > 0");
  if (std::isnan(betaJ) || betaJ < 0.0) throw DomainError("betaJ must be >= 0");
}

Regime classify_regime(const ModelParams& p, double eps) {
  if (!(eps > 0.0)) throw DomainError("regime tolerance must be positive");
  const double g = std::abs(p.gamma);
  if (p.d < g - eps) return Regime::WeakDM;
  if (p.d > g + eps) return Regime::StrongDM;
  return Regime::Boundary;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::WeakDM:
      return "weak_dm";
    case Regime::Boundary:
      return "boundary";
    case Regime::StrongDM:
      return "strong_dm";
  }
  return "unknown";
}

void set_coordinate(ModelParams& p, const std::string& name, double v) {
  if (name == "lambda1")
    p.lambda1 = v;
  else if (name == "lambda2")
    p.lambda2 = v;
  else if (name == "d")
    p.d = v;
  else if (name == "betaJ")
    p.betaJ = v;
  else if (name == "gamma")
    p.gamma = v;
  else
    throw DomainError("unknown coordinate '" + name + "'");
}

}  // namespace datxy
