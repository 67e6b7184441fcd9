#pragma once

#include <array>
#include <span>

#include "driftkin/poisson/grid_field.hpp"

namespace driftkin {

/// Lagrange weights of the 4-point cubic through nodes -1, 0, 1, 2 evaluated
/// at fractional offset t in [0, 1).
inline std::array<double, 4> cubic_weights(double t) {
  const double tm1 = t - 1.0;
  const double tm2 = t - 2.0;
  const double tp1 = t + 1.0;
  return {-t * tm1 * tm2 / 6.0, tp1 * tm1 * tm2 / 2.0, -tp1 * t * tm2 / 2.0, tp1 * t * tm1 / 6.0};
}

/// Tensor-product periodic cubic interpolation of nodal values on a 2D torus grid.
double interpolate_cubic(const TorusGrid& grid, std::span<const double> values, Vec2 x);

}  // namespace driftkin
