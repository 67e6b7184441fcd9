#pragma once

#include <string>
#include <string_view>

#include "driftkin/vec.hpp"

namespace driftkin::fields {

enum class FieldVariant { uniform, linear_ramp, periodic_bump };

std::string_view to_string(FieldVariant v);
FieldVariant field_variant_from_string(std::string_view name);

/// Analytic magnitude b(t, x_perp) of the external field B = (0, 0, b).
///
/// The field never depends on x_par, so div B = 0 holds for every variant.
/// Only the perpendicular position enters; t is accepted for interface
/// symmetry but all shipped variants are static.
///
///   uniform        b = b0
///   linear_ramp    b = b0 + g . x_perp
///   periodic_bump  b = b0 + A/4 (1 + cos k_x (x - c_x)) (1 + cos k_y (y - c_y)),
///                  k = 2 pi / period; peak b0 + A at the center, minimum b0.
struct MagneticFieldModel {
  FieldVariant variant = FieldVariant::uniform;
  double b0 = 1.0;
  Vec2 gradient{};
  double amplitude = 0.0;
  Vec2 center{};
  Vec2 period{kTwoPi, kTwoPi};
  double alpha = 0.5;

  static MagneticFieldModel uniform(double b0, double alpha);
  static MagneticFieldModel linear_ramp(double b0, Vec2 gradient, double alpha);
  static MagneticFieldModel periodic_bump(double b0, double amplitude, Vec2 center, Vec2 period,
                                          double alpha);

  /// b without the lower-bound check; for hot loops on validated regions.
  double value(Vec2 x_perp) const;
  Vec2 gradient_at(Vec2 x_perp) const;
  bool is_uniform() const { return variant == FieldVariant::uniform; }
};

/// b(t, x_perp); throws ModelViolation when b <= alpha at the point.
double eval_b(const MagneticFieldModel& model, double t, Vec2 x_perp);

Vec2 grad_b(const MagneticFieldModel& model, double t, Vec2 x_perp);

struct SampleLattice {
  Vec2 lower{};
  Vec2 upper{kTwoPi, kTwoPi};
  int nx = 16;
  int ny = 16;
};

struct ValidationReport {
  bool passed = false;
  double min_b = 0.0;
  double max_b = 0.0;
  double max_grad = 0.0;
  Vec2 min_location{};
  int points = 0;
};

/// Scans the lattice. A dip below alpha yields passed == false, not an exception.
ValidationReport validate_field(const MagneticFieldModel& model, const SampleLattice& lattice);

}  // namespace driftkin::fields
