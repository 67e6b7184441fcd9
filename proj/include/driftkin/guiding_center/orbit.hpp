#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/guiding_center/potential.hpp"
#include "driftkin/vec.hpp"

namespace driftkin::gc {

/// Guiding-center state in the w-chart. x_par and v_par are carried but
/// never change on the slow scale when P = 0.
struct GuidingCenterState {
  Vec2 x_perp{};
  double x_par = 0.0;
  double w = 0.0;
  double v_par = 0.0;
};

struct OrbitSample {
  double t = 0.0;
  Vec2 x_perp{};
  double w = 0.0;
  double mu = 0.0;
  double b = 0.0;
  Vec2 u_perp{};
};

struct DriftOrbit {
  GuidingCenterState initial;
  std::vector<OrbitSample> samples;
};

/// RK4 for dx_perp/dt = U_perp, dw/dt = u_w in a frozen potential. Samples
/// every step, including t = 0. Throws ModelViolation naming the position if
/// the orbit reaches a point where b <= alpha.
DriftOrbit integrate_drift_orbit(const GuidingCenterState& state0, const PotentialModel& phi,
                                 const fields::MagneticFieldModel& model, double t_end,
                                 double dt);

/// Largest |mu(t) - mu(0)| / max(mu(0), 1e-12) along the orbit.
double relative_mu_drift(const DriftOrbit& orbit);

/// `orbit_<id>.csv` with columns t,x,y,w,mu,b,u_x,u_y.
void write_orbit_csv(const DriftOrbit& orbit, const std::filesystem::path& path);

}  // namespace driftkin::gc
