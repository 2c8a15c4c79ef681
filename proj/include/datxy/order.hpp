#pragma once

#include <limits>
#include <string>
#include <vector>

#include "datxy/correlators.hpp"
#include "datxy/model.hpp"
#include "datxy/quadrature.hpp"

namespace datxy {

enum class Phase { AFM, PM_I, PM_II, CH };
std::string to_string(Phase ph);

struct Thresholds {
  double theta_M = 0.1;   // staggered magnetization
  double theta_C = 0.05;  // chiral order
  double theta_S = 0.3;   // |m_e m_o|
  double theta_g = 1e-4;  // single-particle gap
  void validate() const;
};

struct PhaseEvidence {
  double Mx = std::numeric_limits<double>::quiet_NaN();
  double S = std::numeric_limits<double>::quiet_NaN();
  double Cchi = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
};

struct PhaseLabel {
  Phase label = Phase::AFM;
  PhaseEvidence evidence;
};

inline constexpr double kDefaultHx = 1e-3;

/// Ground-state staggered x magnetization of the open chain in the field hx.
double staggered_mx(const ModelParams& p, int N, double hx = kDefaultHx);

struct MxExtrapolation {
  std::vector<double> hx;
  std::vector<double> values;
  double intercept = 0.0;  // least-squares line in hx, evaluated at hx = 0
};
MxExtrapolation staggered_mx_extrapolated(const ModelParams& p, int N,
                                          const std::vector<double>& hx = {1e-2, 1e-3, 1e-4});

/// S = m_e m_o.
double pm_discriminator(const CorrelatorSet& cs);
/// |C^xy - C^yx|.
double chiral_order(const CorrelatorSet& cs);
/// (2/pi)|cos phi1 - cos phi2| when the root pair is real, else 0. lambda2 = 0, T = 0.
double chiral_order_closed_form(const ModelParams& p);

struct ClassifyOptions {
  Thresholds thresholds;
  int ed_sites = 8;
  double hx = kDefaultHx;
  int gap_points = 2048;
  QuadratureSpec quad;
};

/// Label from evidence: AFM if Mx > theta_M, else CH if Cchi > theta_C and
/// gap < theta_g, else PM-I if S > theta_S, else PM-II if S < -theta_S.
/// Throws Unclassified when nothing fires.
PhaseLabel classify_evidence(const PhaseEvidence& ev, const Thresholds& th);

/// Computes the evidence at p (betaJ ignored, ground state) and labels it.
/// Later evidence is skipped once an earlier criterion decides.
PhaseLabel classify_point(const ModelParams& p, const ClassifyOptions& opt = {});

}  // namespace datxy
