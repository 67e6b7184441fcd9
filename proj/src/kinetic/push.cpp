#include "driftkin/kinetic/push.hpp"

#include <cmath>
#include <sstream>

#include "driftkin/error.hpp"
#include "driftkin/parallel.hpp"

namespace driftkin::kinetic {

PhaseRate lorentz_rhs(const Vec3& x, const Vec3& v, const Vec3& e, double b, double eps) {
  (void)x;
  const double omega = b / eps;
  return {v, {e.x + omega * v.y, e.y - omega * v.x, e.z}};
}

void check_rotation_bound(double ds, double b_max, double eps) {
  if (!(ds > 0.0) || !(eps > 0.0)) throw ConfigError({"ds and epsilon must be positive"});
  const double angle = ds * b_max / eps;
  if (angle > 0.5) {
    std::ostringstream os;
    os << "ds * b_max / eps = " << angle << " exceeds 0.5; the gyration is not resolved";
    throw ConfigError({os.str()});
  }
}

double gyroperiod_step(double eps, double b_max, int steps_per_period) {
  if (steps_per_period < 13) throw InvalidParameter("need at least 13 steps per gyroperiod");
  return kTwoPi * eps / b_max / steps_per_period;
}

Particle boris_push(const Particle& p, const Vec3& e, double b, double eps, double ds) {
  double x = p.x.x, y = p.x.y, z = p.x.z;
  double vx = p.v.x, vy = p.v.y, vz = p.v.z;
  const double ex = e.x, ey = e.y, ez = e.z;
  const double angle = ds * b / eps;
  const double c = std::cos(angle), s = std::sin(angle);
  simd::ParticleView view{{&x, 1}, {&y, 1}, {&z, 1}, {&vx, 1}, {&vy, 1}, {&vz, 1}};
  simd::scalar::boris_push(view, {{&ex, 1}, {&ey, 1}, {&ez, 1}}, {&c, 1}, {&s, 1}, ds);
  return {{x, y, z}, {vx, vy, vz}};
}

void boris_push(ParticleEnsemble& ens, std::span<const double> ex, std::span<const double> ey,
                std::span<const double> ez, std::span<const double> b, double eps, double ds,
                int threads) {
  const std::size_t n = ens.size();
  std::vector<double> c(n), s(n);
  const double k = ds / eps;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::cos(k * b[i]);
    s[i] = std::sin(k * b[i]);
  }
  simd::ParticleView all = ens.view();
  parallel_chunks(n, std::max(1, threads), threads, [&](int, std::size_t lo, std::size_t hi) {
    const std::size_t m = hi - lo;
    simd::ParticleView v{all.x.subspan(lo, m),  all.y.subspan(lo, m),  all.z.subspan(lo, m),
                         all.vx.subspan(lo, m), all.vy.subspan(lo, m), all.vz.subspan(lo, m)};
    simd::boris_push(v, {ex.subspan(lo, m), ey.subspan(lo, m), ez.subspan(lo, m)},
                     std::span<const double>(c).subspan(lo, m),
                     std::span<const double>(s).subspan(lo, m), ds);
  });
}

FullOrbit integrate_full_orbit(const Particle& p0, const std::function<Vec3(const Vec3&)>& e_field,
                               const fields::MagneticFieldModel& model, double eps, double ds,
                               long steps, int sample_every) {
  if (sample_every < 1) throw InvalidParameter("sample_every must be >= 1");
  Particle p = p0;
  const double b0 = fields::eval_b(model, 0.0, {p.x.x, p.x.y});
  check_rotation_bound(ds, b0, eps);
  FullOrbit orbit;
  auto record = [&](long n) {
    orbit.t.push_back(eps * ds * static_cast<double>(n));
    orbit.x.push_back(p.x);
    orbit.v.push_back(p.v);
  };
  record(0);
  for (long n = 1; n <= steps; ++n) {
    const double b = fields::eval_b(model, 0.0, {p.x.x, p.x.y});
    p = boris_push(p, e_field(p.x), b, eps, ds);
    if (n % sample_every == 0) record(n);
  }
  return orbit;
}

}  // namespace driftkin::kinetic
