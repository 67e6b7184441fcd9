#pragma once

#include <functional>
#include <vector>

#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/kinetic/particles.hpp"
#include "driftkin/vec.hpp"

namespace driftkin::kinetic {

struct Particle {
  Vec3 x{};
  Vec3 v{};
};

struct PhaseRate {
  Vec3 dx{};
  Vec3 dv{};
};

/// Characteristics in fast time s = t / eps:
/// dx/ds = v, dv/ds = E + (b/eps) (v_y, -v_x, 0).
PhaseRate lorentz_rhs(const Vec3& x, const Vec3& v, const Vec3& e, double b, double eps);

/// Throws ConfigError unless ds * b_max / eps <= 0.5.
void check_rotation_bound(double ds, double b_max, double eps);

/// ds = (2 pi eps / b_max) / steps_per_period.
double gyroperiod_step(double eps, double b_max, int steps_per_period = 64);

/// Exact-angle Boris step for one particle. `e` is the field at the
/// particle; the rotation angle is ds * b / eps.
Particle boris_push(const Particle& p, const Vec3& e, double b, double eps, double ds);

/// Boris step for a batch; e_* and b hold per-particle samples.
void boris_push(ParticleEnsemble& ens, std::span<const double> ex, std::span<const double> ey,
                std::span<const double> ez, std::span<const double> b, double eps, double ds,
                int threads = 1);

/// Single-particle orbit in prescribed fields, sampled in physical time t = eps s.
struct FullOrbit {
  std::vector<double> t;
  std::vector<Vec3> x;  // unwrapped
  std::vector<Vec3> v;
};

FullOrbit integrate_full_orbit(const Particle& p0, const std::function<Vec3(const Vec3&)>& e_field,
                               const fields::MagneticFieldModel& model, double eps, double ds,
                               long steps, int sample_every = 1);

}  // namespace driftkin::kinetic
