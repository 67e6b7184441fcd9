#include "driftkin/kinetic/drift_study.hpp"

#include <cmath>

#include "driftkin/error.hpp"
#include "driftkin/guiding_center/drift.hpp"
#include "driftkin/guiding_center/orbit.hpp"
#include "driftkin/kinetic/pic.hpp"
#include "driftkin/kinetic/push.hpp"

namespace driftkin::kinetic {

int corefined_steps_per_period(int n_ref, double eps_ref, double eps) {
  if (!(eps > 0.0) || !(eps_ref > 0.0)) throw InvalidParameter("epsilon must be positive");
  return std::max(n_ref, static_cast<int>(std::lround(n_ref * eps_ref / eps)));
}

DriftStudyResult run_drift_study(const DriftStudyConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  const double eps = cfg.epsilon;
  fields::MagneticFieldModel model;
  Vec3 e{};
  if (cfg.kind == DriftKind::exb) {
    model = fields::MagneticFieldModel::uniform(cfg.b0, cfg.alpha);
    e = {-cfg.e0, 0.0, 0.0};
  } else {
    model = fields::MagneticFieldModel::linear_ramp(cfg.b0, cfg.gradient, cfg.alpha);
  }
  const Particle p0{{cfg.x0.x, cfg.x0.y, 0.0}, {cfg.w, 0.0, 0.0}};
  const double b_start = fields::eval_b(model, 0.0, cfg.x0);
  const Vec2 gc_start = cfg.x0 + (eps / b_start) * perp(Vec2{p0.v.x, p0.v.y});
  const double b_gc = fields::eval_b(model, 0.0, gc_start);

  DriftStudyResult r;
  const double ds = kTwoPi * eps / b_gc / cfg.steps_per_period;
  const long steps = static_cast<long>(cfg.steps_per_period) * (cfg.n_periods + 1);
  const FullOrbit orbit =
      integrate_full_orbit(p0, [&](const Vec3&) { return e; }, model, eps, ds, steps);
  r.trajectory.t = orbit.t;
  r.trajectory.x.reserve(orbit.x.size());
  for (const auto& x : orbit.x) r.trajectory.x.push_back({x.x, x.y});

  // Gyroperiod from b at the orbit's mean position over the window.
  r.gyroperiod = kTwoPi * eps * eps / b_gc;
  for (int it = 0; it < 3; ++it) {
    const double window = r.gyroperiod * cfg.n_periods;
    Vec2 mean{};
    std::size_t count = 0;
    for (std::size_t k = 0; k < orbit.t.size() && orbit.t[k] <= window; ++k) {
      mean = mean + r.trajectory.x[k];
      ++count;
    }
    mean = (1.0 / static_cast<double>(count)) * mean;
    r.gyroperiod = kTwoPi * eps * eps / fields::eval_b(model, 0.0, mean);
  }
  r.measured = diag::drift_measurement(r.trajectory, r.gyroperiod, cfg.n_periods);

  const Vec2 grad_phi{-e.x, -e.y};
  const auto u = gc::drift_velocity(cfg.w, grad_phi, b_gc, fields::grad_b(model, 0.0, gc_start));
  r.predicted = u.u_perp;
  r.relative_error = norm(r.measured - r.predicted) / norm(r.predicted);
  return r;
}

namespace {

// Cubic Hermite interpolation of a uniformly sampled drift orbit.
Vec2 orbit_position(const gc::DriftOrbit& o, double dt, double t) {
  const auto& s = o.samples;
  const double u = t / dt;
  std::size_t k = static_cast<std::size_t>(std::floor(u));
  if (k + 1 >= s.size()) k = s.size() - 2;
  const double a = u - static_cast<double>(k);
  const double h00 = (1 + 2 * a) * (1 - a) * (1 - a);
  const double h10 = a * (1 - a) * (1 - a);
  const double h01 = a * a * (3 - 2 * a);
  const double h11 = a * a * (a - 1);
  return h00 * s[k].x_perp + (h10 * dt) * s[k].u_perp + h01 * s[k + 1].x_perp +
         (h11 * dt) * s[k + 1].u_perp;
}

}  // namespace

ReducedComparison compare_pic_with_drift_orbits(const ReducedComparisonConfig& cfg, double eps) {
  const TorusGrid grid = TorusGrid::square(cfg.grid_n);
  const auto field = fields::MagneticFieldModel::uniform(1.0, 0.5);
  InitialSpec spec;
  spec.spatial = SpatialProfile::lattice;
  spec.velocity = VelocityProfile::ring;
  spec.ring_speed = cfg.ring_speed;
  spec.thermal_speed = 0.0;
  spec.density = [&](const Vec3& x) { return cfg.vortex.density_at({x.x, x.y}); };
  PicState st = make_pic_state(sample_initial(spec, grid, cfg.n_particles, cfg.seed), grid, field,
                               eps, std::nullopt, cfg.threads);

  const std::size_t n = st.ensemble.size();
  const PotentialModel phi0 = PotentialModel::grid(st.phi);
  const double dt = cfg.orbit_dt;
  const double t_orbit = dt * std::ceil(cfg.t_end / dt);
  std::vector<gc::DriftOrbit> marker_orbits(n), gc_orbits(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 x0{st.ensemble.x[i], st.ensemble.y[i]};
    const Vec2 v0{st.ensemble.vx[i], st.ensemble.vy[i]};
    const Vec2 g0 = x0 + eps * perp(v0);
    marker_orbits[i] = gc::integrate_drift_orbit({x0, 0.0, norm(v0), 0.0}, phi0, field, t_orbit, dt);
    gc_orbits[i] = gc::integrate_drift_orbit({g0, 0.0, norm(v0), 0.0}, phi0, field, t_orbit, dt);
  }

  ReducedComparison out;
  out.steps_per_period = corefined_steps_per_period(cfg.steps_per_period_ref, cfg.eps_ref, eps);
  const double ds = gyroperiod_step(eps, 1.0, out.steps_per_period);
  out.steps = std::lround(cfg.t_end / (eps * ds));
  const long window_start = out.steps - out.steps_per_period;
  double marker_acc = 0.0, gc_acc = 0.0;
  int samples = 0;
  const double wsum = st.ensemble.total_weight();
  for (long step = 1; step <= out.steps; ++step) {
    step_pic(st, ds);
    if (step <= window_start) continue;
    const double t = st.t();
    double m2 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 x = st.ensemble.unwrapped(i);
      const Vec2 m{x.x, x.y};
      const Vec2 g = m + eps * perp(Vec2{st.ensemble.vx[i], st.ensemble.vy[i]});
      const Vec2 dm = m - orbit_position(marker_orbits[i], dt, t);
      const Vec2 dg = g - orbit_position(gc_orbits[i], dt, t);
      m2 += st.ensemble.weight[i] * dot(dm, dm);
      g2 += st.ensemble.weight[i] * dot(dg, dg);
    }
    marker_acc += m2 / wsum;
    gc_acc += g2 / wsum;
    ++samples;
  }
  out.marker_error = std::sqrt(marker_acc / samples);
  out.gc_error = std::sqrt(gc_acc / samples);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 x = st.ensemble.unwrapped(i);
    const Vec2 d = Vec2{x.x, x.y} - marker_orbits[i].samples.front().x_perp;
    d2 += st.ensemble.weight[i] * dot(d, d);
  }
  out.displacement = std::sqrt(d2 / wsum);
  return out;
}

}  // namespace driftkin::kinetic
