#pragma once

#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/guiding_center/potential.hpp"
#include "driftkin/vec.hpp"

namespace driftkin::gc {

struct DriftVelocity {
  Vec2 u_perp{};   // guiding-center drift across the field
  double u_w = 0;  // rate of change of the perpendicular speed
};

/// Limit-model drift for local data:
///   U_perp = -(1/b) (grad phi + (w^2 / 2b) grad b)^perp
///   u_w    = (w / 2b^2) (grad b)^perp . grad phi
/// with (u_x, u_y)^perp = (u_y, -u_x).
DriftVelocity drift_velocity(double w, Vec2 grad_phi, double b, Vec2 grad_b);

DriftVelocity drift_velocity(Vec2 x_perp, double w, const PotentialModel& phi,
                             const fields::MagneticFieldModel& model, double t);

/// E x B part alone: -(grad phi)^perp / b.
Vec2 exb_drift(Vec2 grad_phi, double b);
/// Gradient-B part alone: -(w^2/2) (grad b)^perp / b^2.
Vec2 gradb_drift(double w, double b, Vec2 grad_b);

/// mu = w^2 / (2b).
double magnetic_moment(double w, double b);

}  // namespace driftkin::gc
