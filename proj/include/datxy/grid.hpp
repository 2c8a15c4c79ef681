#pragma once

#include <string>
#include <vector>

#include "datxy/model.hpp"

namespace datxy {

/// One axis of a rectangular scan: `count` equally spaced values in [min, max].
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  double value(int i) const {
    return count == 1 ? min : min + (max - min) * static_cast<double>(i) / (count - 1);
  }
  double step() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }
};

/// Set a named coordinate ("lambda1", "lambda2", "d", "betaJ", "gamma") on p.
/// Throws DomainError for other names.
void set_coordinate(ModelParams& p, const std::string& name, double v);

/// Rectangular 2-D grid with row-major (y outer, x inner) ordering.
struct Grid2D {
  Axis x{"lambda1", 0.0, 2.0, 100};
  Axis y{"lambda2", 0.0, 1.5, 100};
  ModelParams fixed;

  std::size_t size() const { return static_cast<std::size_t>(x.count) * y.count; }
  ModelParams at(int ix, int iy) const {
    ModelParams p = fixed;
    set_coordinate(p, x.name, x.value(ix));
    set_coordinate(p, y.name, y.value(iy));
    return p;
  }
};

}  // namespace datxy
