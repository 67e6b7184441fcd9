#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "driftkin/poisson/grid_field.hpp"
#include "driftkin/vec.hpp"

namespace driftkin {

/// Frozen electrostatic potential phi(x_perp) used by single-particle and
/// drift-orbit runs.
///
///   zero            phi = 0
///   uniform-field   phi = -E . x           (E = -grad phi constant)
///   quadratic-well  phi = (k/2) |x - c|^2
///   cellular        phi = a sin(m_x x) sin(m_y y)
///   grid            bicubic interpolation of nodal phi and its spectral gradient
class PotentialModel {
public:
  enum class Kind { zero, uniform_field, quadratic_well, cellular, grid };

  static PotentialModel zero();
  static PotentialModel uniform_field(Vec2 electric);
  static PotentialModel quadratic_well(Vec2 center, double strength);
  static PotentialModel cellular(double amplitude, Vec2 mode);
  /// phi must live on a 2D torus grid.
  static PotentialModel grid(const ScalarField& phi);

  Kind kind() const { return kind_; }
  double value(Vec2 x) const;
  Vec2 gradient(Vec2 x) const;
  Vec2 electric(Vec2 x) const { return -gradient(x); }

private:
  Kind kind_ = Kind::zero;
  Vec2 vec_{};
  double scalar_ = 0.0;
  struct GridData;
  std::shared_ptr<const GridData> grid_;
};

std::string_view to_string(PotentialModel::Kind k);

}  // namespace driftkin
