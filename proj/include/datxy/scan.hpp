#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "datxy/grid.hpp"
#include "datxy/model.hpp"
#include "datxy/order.hpp"
#include "datxy/quadrature.hpp"

namespace datxy {

inline constexpr const char* kVersion = "1.0.0";

enum class Quantity { LN, dLN_dl1, dLN_dl2, Mx, S, Cchi, Gap, Mz, Correlators, PhaseLabel };
Quantity parse_quantity(const std::string& s);
std::string to_string(Quantity q);

struct ScanOptions {
  QuadratureSpec quad;
  int ed_sites = 8;
  double hx = kDefaultHx;
  double fd_step = 1e-3;
  int gap_points = 2048;
  Thresholds thresholds;
  int threads = 0;  // 0: DATXY_THREADS or 1
};

/// Rectangular scan. A y axis with count 1 (name empty) makes it 1-D.
/// Axis names: lambda1, lambda2, d, betaJ, gamma, t. A "t" axis turns the
/// other coordinates into the pre-quench state of a field-off quench.
struct ScanGrid {
  Axis x{"lambda1", 0.0, 2.0, 100};
  Axis y{"", 0.0, 0.0, 1};
  ModelParams fixed;
  Quantity quantity = Quantity::LN;
  ScanOptions options;

  void validate() const;
};

/// Column names of the value part of a record.
std::vector<std::string> value_columns(Quantity q);

/// Resolve the worker count: explicit request, else DATXY_THREADS, else 1.
int worker_count(int requested);

/// Runs fn(i) for i in [0, n) on `workers` threads. Results land by index, so
/// output order never depends on scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// Writes the CSV (first line "# " + JSON header) and returns the exit status:
/// 0 when every point converged, 3 when any point hit a numerical failure.
/// Configuration errors throw DomainError.
int run_scan(const ScanGrid& grid, std::ostream& out, const std::string& json_header);

/// Fixed-precision formatting used for every numeric field.
std::string fmt_num(double v);

}  // namespace datxy
