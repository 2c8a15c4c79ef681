#include "datxy/uniform.hpp"

#include <array>
#include <vector>

namespace datxy {

namespace {

void require_uniform(const ModelParams& p) {
  p.validate();
  if (p.lambda2 != 0.0) throw DomainError("uniform-field formula called with lambda2 != 0");
}

// Interior point where Lambda(lambda1, phi) is smallest, if any.
std::vector<double> lambda_min_breaks(double gamma, double l1) {
  std::vector<double> out;
  const double g2 = gamma * gamma;
  if (g2 < 1.0) {
    const double cstar = -l1 / (1.0 - g2);
    if (cstar > -1.0 && cstar < 1.0) out.push_back(std::acos(cstar));
  }
  return out;
}

// g(phi) = Lambda(phi) - d sin(phi); its zeros on [0, pi] are the root pair.
double omega_minus(const ModelParams& p, double phi) {
  return lambda_of(p.gamma, p.lambda1, phi) - p.d * std::sin(phi);
}

double golden_min(const ModelParams& p, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = omega_minus(p, x1), f2 = omega_minus(p, x2);
  while (b - a > 1e-13) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = omega_minus(p, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = omega_minus(p, x2);
    }
  }
  return 0.5 * (a + b);
}

// Ratio sinh(b*L)/L scaled by exp(-m), continuous at L = 0.
double scaled_sinh_over(double b, double L, double m) {
  if (L < 1e-300) return b * std::exp(-m);
  return 0.5 * (std::exp(b * L - m) - std::exp(-b * L - m)) / L;
}

}  // namespace

double lambda_of(double gamma, double x, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return std::hypot(x + c, gamma * s);
}

DispersionPoint spectrum_uniform(const ModelParams& p, double phi) {
  require_uniform(p);
  DispersionPoint dp;
  dp.phi = phi;
  dp.Lambda = lambda_of(p.gamma, p.lambda1, phi);
  dp.omega = p.J * (p.d * std::sin(phi) + dp.Lambda);
  return dp;
}

RootPair root_pair(const ModelParams& p) {
  RootPair r;
  if (classify_regime(p) != Regime::StrongDM) return r;
  const double g2 = p.gamma * p.gamma, d2 = p.d * p.d, l1 = p.lambda1;
  const double A = 1.0 + d2 - g2;
  if (l1 * l1 > A) return r;
  r.real_solutions = true;
  const double disc = (d2 - g2) * (A - l1 * l1);
  if (disc < 1e-12) {
    // Double root: the quadratic is ill-conditioned, locate the tangency directly.
    const double c0 = std::clamp(-l1 / A, -1.0, 1.0);
    const double guess = std::acos(c0);
    const double phi = golden_min(p, std::max(0.0, guess - 1e-3), std::min(kPi, guess + 1e-3));
    r.phi1 = r.phi2 = phi;
    return r;
  }
  const double sq = std::sqrt(disc);
  const double cp = std::clamp((-l1 + sq) / A, -1.0, 1.0);
  const double cm = std::clamp((-l1 - sq) / A, -1.0, 1.0);
  r.phi1 = std::acos(cp);
  r.phi2 = std::acos(cm);
  return r;
}

CorrelatorSet zero_T_correlators_uniform(const ModelParams& p, const QuadratureSpec& q) {
  require_uniform(p);
  const double g = p.gamma, l1 = p.lambda1;
  auto f = [g, l1](double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    const double L = lambda_of(g, l1, phi);
    if (L < 1e-300) return std::array<double, 3>{0.0, 0.0, 0.0};
    const double common = (L - c - l1) * c;
    return std::array<double, 3>{(-g * s * s + common) / L, (g * s * s + common) / L,
                                 -(l1 + c) / L};
  };
  const RootPair rp = root_pair(p);
  const std::vector<double> brk = lambda_min_breaks(g, l1);
  CorrelatorSet cs;
  if (!rp.real_solutions) {
    auto r = integrate_components<3>(f, 0.0, kPi, q, brk);
    cs.cxx = r.value[0] / kPi;
    cs.cyy = r.value[1] / kPi;
    cs.mz_e = cs.mz_o = r.value[2] / kPi;
    cs.quad_error = r.error / kPi;
    cs.branch = "insensitive";
  } else {
    auto r1 = integrate_components<3>(f, 0.0, rp.phi1, q, brk);
    auto r2 = integrate_components<3>(f, rp.phi2, kPi, q, brk);
    const double off = (std::sin(rp.phi2) - std::sin(rp.phi1)) / kPi;
    cs.cxx = (r1.value[0] + r2.value[0]) / kPi + off;
    cs.cyy = (r1.value[1] + r2.value[1]) / kPi + off;
    cs.mz_e = cs.mz_o = (r1.value[2] + r2.value[2]) / kPi;
    cs.cxy = (std::cos(rp.phi2) - std::cos(rp.phi1)) / kPi;
    cs.cyx = -cs.cxy;
    cs.quad_error = (r1.error + r2.error) / kPi;
    cs.branch = "chiral";
  }
  cs.fill_wick();
  return cs;
}

CorrelatorSet thermal_correlators_uniform(const ModelParams& p, const QuadratureSpec& q) {
  require_uniform(p);
  if (p.zero_temperature())
    throw DomainError("thermal_correlators_uniform needs finite betaJ; use the zero-T route");
  const double g = p.gamma, l1 = p.lambda1, d = p.d, b = p.betaJ;
  auto f = [=](double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    const double L = lambda_of(g, l1, phi);
    const double xd = b * d * s;
    const double m = std::max(b * L, std::abs(xd));
    const double chL = 0.5 * (std::exp(b * L - m) + std::exp(-b * L - m));
    const double chD = 0.5 * (std::exp(xd - m) + std::exp(-xd - m));
    const double shD = 0.5 * (std::exp(xd - m) - std::exp(-xd - m));
    const double shL_over = scaled_sinh_over(b, L, m);
    const double den = chL + chD;
    const double gs2 = g * s * s, cc = (c + l1) * c;
    return std::array<double, 4>{
        (-(gs2 + cc) * shL_over + c * chL + c * chD) / den,
        ((gs2 - cc) * shL_over + c * chL + c * chD) / den,
        -s * shD / den,
        -(l1 + c) * shL_over / den};
  };
  const std::vector<double> brk = lambda_min_breaks(g, l1);
  auto r = integrate_components<4>(f, 0.0, kPi, q, brk);
  CorrelatorSet cs;
  cs.cxx = r.value[0] / kPi;
  cs.cyy = r.value[1] / kPi;
  cs.cxy = r.value[2] / kPi;
  // Exact diagonalization fixes the relative sign: the two cross correlators are opposite.
  cs.cyx = -cs.cxy;
  cs.mz_e = cs.mz_o = r.value[3] / kPi;
  cs.quad_error = r.error / kPi;
  cs.branch = "thermal";
  cs.fill_wick();
  return cs;
}

}  // namespace datxy
