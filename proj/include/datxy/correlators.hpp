#pragma once

#include <string>

namespace datxy {

/// Nearest-neighbour correlators of the bond (even site j, odd site j+1)
/// and the two sublattice magnetizations, at one parameter point.
struct CorrelatorSet {
  double cxx = 0.0;
  double cyy = 0.0;
  double cxy = 0.0;  // <sx_e sy_o>
  double cyx = 0.0;  // <sy_e sx_o>
  double czz = 0.0;
  double mz_e = 0.0;
  double mz_o = 0.0;

  // Diagnostics carried along with the numbers.
  bool degenerate_ground = false;
  double quad_error = 0.0;
  std::string branch;  // which closed-form branch produced the values, if any

  /// C^zz from the Gaussian-state identity.
  double wick_czz() const { return mz_e * mz_o - cxx * cyy + cxy * cyx; }
  void fill_wick() { czz = wick_czz(); }
};

}  // namespace datxy
