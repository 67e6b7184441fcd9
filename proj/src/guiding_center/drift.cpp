#include "driftkin/guiding_center/drift.hpp"

namespace driftkin::gc {

DriftVelocity drift_velocity(double w, Vec2 grad_phi, double b, Vec2 grad_b) {
  const Vec2 total = grad_phi + (w * w / (2.0 * b)) * grad_b;
  return {-(1.0 / b) * perp(total), (w / (2.0 * b * b)) * dot(perp(grad_b), grad_phi)};
}

DriftVelocity drift_velocity(Vec2 x_perp, double w, const PotentialModel& phi,
                             const fields::MagneticFieldModel& model, double t) {
  return drift_velocity(w, phi.gradient(x_perp), fields::eval_b(model, t, x_perp),
                        fields::grad_b(model, t, x_perp));
}

Vec2 exb_drift(Vec2 grad_phi, double b) { return -(1.0 / b) * perp(grad_phi); }

Vec2 gradb_drift(double w, double b, Vec2 grad_b) {
  return -(0.5 * w * w / (b * b)) * perp(grad_b);
}

double magnetic_moment(double w, double b) { return w * w / (2.0 * b); }

}  // namespace driftkin::gc
