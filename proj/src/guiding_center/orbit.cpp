#include "driftkin/guiding_center/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "driftkin/diagnostics/record.hpp"
#include "driftkin/error.hpp"
#include "driftkin/guiding_center/drift.hpp"

namespace driftkin::gc {

namespace {

struct Phase {
  Vec2 x;
  double w;
};

Phase rhs(const Phase& p, const PotentialModel& phi, const fields::MagneticFieldModel& model,
          double t) {
  const auto d = drift_velocity(p.x, p.w, phi, model, t);
  return {d.u_perp, d.u_w};
}

Phase axpy(const Phase& p, double a, const Phase& k) { return {p.x + a * k.x, p.w + a * k.w}; }

OrbitSample sample(double t, const Phase& p, const PotentialModel& phi,
                   const fields::MagneticFieldModel& model) {
  const double b = fields::eval_b(model, t, p.x);
  const auto d = drift_velocity(p.w, phi.gradient(p.x), b, fields::grad_b(model, t, p.x));
  return {t, p.x, p.w, magnetic_moment(p.w, b), b, d.u_perp};
}

}  // namespace

DriftOrbit integrate_drift_orbit(const GuidingCenterState& state0, const PotentialModel& phi,
                                 const fields::MagneticFieldModel& model, double t_end,
                                 double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw InvalidParameter("orbit needs dt > 0 and T >= 0");
  if (state0.w < 0.0) throw InvalidParameter("initial w must be nonnegative");
  const long steps = std::lround(t_end / dt);
  DriftOrbit orbit{state0, {}};
  orbit.samples.reserve(steps + 1);
  Phase p{state0.x_perp, state0.w};
  orbit.samples.push_back(sample(0.0, p, phi, model));
  for (long n = 0; n < steps; ++n) {
    const double t = n * dt;
    const Phase k1 = rhs(p, phi, model, t);
    const Phase k2 = rhs(axpy(p, 0.5 * dt, k1), phi, model, t + 0.5 * dt);
    const Phase k3 = rhs(axpy(p, 0.5 * dt, k2), phi, model, t + 0.5 * dt);
    const Phase k4 = rhs(axpy(p, dt, k3), phi, model, t + dt);
    p.x = p.x + (dt / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    p.w = p.w + (dt / 6.0) * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
    orbit.samples.push_back(sample((n + 1) * dt, p, phi, model));
  }
  return orbit;
}

double relative_mu_drift(const DriftOrbit& orbit) {
  if (orbit.samples.empty()) return 0.0;
  const double mu0 = orbit.samples.front().mu;
  double worst = 0.0;
  for (const auto& s : orbit.samples) worst = std::max(worst, std::abs(s.mu - mu0));
  return worst / std::max(mu0, 1e-12);
}

void write_orbit_csv(const DriftOrbit& orbit, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "t,x,y,w,mu,b,u_x,u_y\n";
  using diag::format_double;
  for (const auto& s : orbit.samples) {
    out << format_double(s.t) << ',' << format_double(s.x_perp.x) << ','
        << format_double(s.x_perp.y) << ',' << format_double(s.w) << ',' << format_double(s.mu)
        << ',' << format_double(s.b) << ',' << format_double(s.u_perp.x) << ','
        << format_double(s.u_perp.y) << '\n';
  }
}

}  // namespace driftkin::gc
