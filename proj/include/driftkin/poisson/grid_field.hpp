#pragma once

#include <array>
#include <functional>
#include <vector>

#include "driftkin/poisson/torus_grid.hpp"

namespace driftkin {

struct ScalarField {
  TorusGrid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const TorusGrid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

  /// Samples fn at every node.
  static ScalarField sample(const TorusGrid& g, const std::function<double(const Vec3&)>& fn);

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
  double mean() const;
  /// Riemann sum of the nodal values times the cell volume.
  double integral() const;
};

/// Componentwise samples; only the first grid.dimension() components are used.
struct VectorField {
  TorusGrid grid;
  std::array<std::vector<double>, 3> components;

  VectorField() = default;
  explicit VectorField(const TorusGrid& g) : grid(g) {
    for (int a = 0; a < g.dimension(); ++a) components[a].assign(g.size(), 0.0);
  }
  std::vector<double>& operator[](int axis) { return components[axis]; }
  const std::vector<double>& operator[](int axis) const { return components[axis]; }
  /// Integral of |V|^2 over the torus.
  double squared_norm_integral() const;
};

}  // namespace driftkin
