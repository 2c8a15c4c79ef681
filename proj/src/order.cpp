#include "datxy/order.hpp"

#include <cmath>

#include "datxy/blocks.hpp"
#include "datxy/ed.hpp"
#include "datxy/uniform.hpp"

namespace datxy {

std::string to_string(Phase ph) {
  switch (ph) {
    case Phase::AFM:
      return "AFM";
    case Phase::PM_I:
      return "PM-I";
    case Phase::PM_II:
      return "PM-II";
    case Phase::CH:
      return "CH";
  }
  return "?";
}

void Thresholds::validate() const {
  if (!(theta_M > 0 && theta_C > 0 && theta_S > 0 && theta_g > 0))
    throw DomainError("classification thresholds must be positive");
}

double staggered_mx(const ModelParams& p, int N, double hx) {
  if (!(hx > 0.0)) throw DomainError("symmetry-breaking field hx must be > 0");
  ModelParams g = p.with_beta(kInf);
  return staggered_mx_of(SpinChainED(g, N, Boundary::Open, hx));
}

MxExtrapolation staggered_mx_extrapolated(const ModelParams& p, int N,
                                          const std::vector<double>& hx) {
  if (hx.size() < 2) throw DomainError("extrapolation needs at least two fields");
  MxExtrapolation out;
  out.hx = hx;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double h : hx) {
    const double m = staggered_mx(p, N, h);
    out.values.push_back(m);
    sx += h;
    sy += m;
    sxx += h * h;
    sxy += h * m;
  }
  const double n = static_cast<double>(hx.size());
  const double den = n * sxx - sx * sx;
  const double slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  out.intercept = (sy - slope * sx) / n;
  return out;
}

double pm_discriminator(const CorrelatorSet& cs) { return cs.mz_e * cs.mz_o; }

double chiral_order(const CorrelatorSet& cs) { return std::abs(cs.cxy - cs.cyx); }

double chiral_order_closed_form(const ModelParams& p) {
  p.validate();
  if (!p.uniform_field()) throw DomainError("closed-form chiral order needs lambda2 = 0");
  if (!p.zero_temperature()) throw DomainError("closed-form chiral order is a T = 0 result");
  const RootPair rp = root_pair(p);
  if (!rp.real_solutions) return 0.0;
  return 2.0 / kPi * std::abs(std::cos(rp.phi1) - std::cos(rp.phi2));
}

PhaseLabel classify_evidence(const PhaseEvidence& ev, const Thresholds& th) {
  th.validate();
  PhaseLabel out;
  out.evidence = ev;
  if (ev.Mx > th.theta_M) {
    out.label = Phase::AFM;
  } else if (ev.Cchi > th.theta_C && ev.gap < th.theta_g) {
    out.label = Phase::CH;
  } else if (ev.S > th.theta_S) {
    out.label = Phase::PM_I;
  } else if (ev.S < -th.theta_S) {
    out.label = Phase::PM_II;
  } else {
    throw Unclassified("no phase criterion fired (Mx=" + std::to_string(ev.Mx) +
                       ", S=" + std::to_string(ev.S) + ", C=" + std::to_string(ev.Cchi) +
                       ", gap=" + std::to_string(ev.gap) + ")");
  }
  return out;
}

PhaseLabel classify_point(const ModelParams& p, const ClassifyOptions& opt) {
  opt.thresholds.validate();
  const ModelParams g = p.with_beta(kInf);
  PhaseEvidence ev;
  ev.Mx = staggered_mx(g, opt.ed_sites, opt.hx);
  if (ev.Mx > opt.thresholds.theta_M) return classify_evidence(ev, opt.thresholds);
  const CorrelatorSet cs = equilibrium_correlators(g, opt.quad);
  ev.S = pm_discriminator(cs);
  ev.Cchi = chiral_order(cs);
  if (ev.Cchi > opt.thresholds.theta_C) ev.gap = min_gap(g, opt.gap_points);
  return classify_evidence(ev, opt.thresholds);
}

}  // namespace datxy
