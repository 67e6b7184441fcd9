#include "doctest.h"

#include <cmath>

#include "driftkin/error.hpp"
#include "driftkin/guiding_center/chart.hpp"
#include "driftkin/guiding_center/drift.hpp"
#include "driftkin/guiding_center/gc2d.hpp"
#include "driftkin/guiding_center/orbit.hpp"
#include "driftkin/gyro/hierarchy.hpp"
#include "driftkin/poisson/poisson.hpp"

using namespace driftkin;
using namespace driftkin::gc;

namespace {

const auto kBump = fields::MagneticFieldModel::periodic_bump(1.0, 0.3, {kPi, kPi}, {kTwoPi, kTwoPi}, 0.5);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("drift velocity examples") {
  auto d = drift_velocity(0.7, {1.0, 0.0}, 1.0, {0.0, 0.0});
  CHECK(d.u_perp.x == 0.0);
  CHECK(d.u_perp.y == 1.0);
  CHECK(d.u_w == 0.0);

  d = drift_velocity(1.0, {0.0, 0.0}, 1.0, {0.1, 0.0});
  CHECK(d.u_perp.x == 0.0);
  CHECK(d.u_perp.y == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(d.u_w == 0.0);

  const auto ramp = fields::MagneticFieldModel::linear_ramp(1.0, {0.1, 0.0}, 0.5);
  d = drift_velocity({0.0, 0.0}, 0.0, PotentialModel::uniform_field({0.0, -1.0}), ramp, 0.0);
  CHECK(d.u_perp.x == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(d.u_perp.y == 0.0);
  CHECK(d.u_w == 0.0);
}

TEST_CASE("drift velocity splits into the E x B and grad-B parts") {
  const Vec2 gphi{0.3, -1.2}, gb{0.05, 0.2};
  const double b = 1.4, w = 0.9;
  const auto e = drift_velocity(w, gphi, b, {0.0, 0.0});
  CHECK(e.u_perp == exb_drift(gphi, b));
  const auto g = drift_velocity(w, {0.0, 0.0}, b, gb);
  CHECK(g.u_perp.x == doctest::Approx(gradb_drift(w, b, gb).x).epsilon(1e-15));
  CHECK(g.u_perp.y == doctest::Approx(gradb_drift(w, b, gb).y).epsilon(1e-15));
  const auto both = drift_velocity(w, gphi, b, gb);
  CHECK(both.u_perp.x == doctest::Approx(e.u_perp.x + g.u_perp.x).epsilon(1e-15));
  CHECK(both.u_perp.y == doctest::Approx(e.u_perp.y + g.u_perp.y).epsilon(1e-15));
}

TEST_CASE("magnetic moment examples") {
  CHECK(magnetic_moment(2.0, 2.0) == 1.0);
  CHECK(magnetic_moment(0.0, 1.3) == 0.0);
  CHECK(magnetic_moment(1.0, 1.0) == 0.5);
}

TEST_CASE("w times the divergence of U_perp equals -2 u_w") {
  const auto phi = PotentialModel::cellular(1.0, {1.0, 2.0});
  const double w = 1.3, h = 1e-4;
  for (Vec2 x : {Vec2{0.4, 1.1}, Vec2{2.5, 4.0}, Vec2{5.0, 0.3}}) {
    auto u = [&](Vec2 p) { return drift_velocity(p, w, phi, kBump, 0.0).u_perp; };
    const double div = (u({x.x + h, x.y}).x - u({x.x - h, x.y}).x) / (2 * h) +
                       (u({x.x, x.y + h}).y - u({x.x, x.y - h}).y) / (2 * h);
    const double uw = drift_velocity(x, w, phi, kBump, 0.0).u_w;
    CHECK(std::abs(uw) > 1e-4);
    CHECK(w * div == doctest::Approx(-2.0 * uw).epsilon(1e-6));
  }
}

TEST_CASE("E x B orbit in a radial potential is a circle") {
  const Vec2 c{3.0, 3.0};
  const auto phi = PotentialModel::quadratic_well(c, 1.0);
  const auto uniform = fields::MagneticFieldModel::uniform(1.0, 0.5);
  auto radius_error = [&](double dt) {
    const auto orbit = integrate_drift_orbit({{4.0, 3.0}, 0.0, 0.0, 0.0}, phi, uniform, 10.0, dt);
    double worst = 0.0;
    for (const auto& s : orbit.samples) {
      worst = std::max(worst, std::abs(std::hypot(s.x_perp.x - c.x, s.x_perp.y - c.y) - 1.0));
    }
    return worst;
  };
  const double e1 = radius_error(0.1), e2 = radius_error(0.05);
  CHECK(e1 < 1e-5);
  CHECK(e1 / e2 >= 15.0);
}

TEST_CASE("grad-B orbits follow the level sets of b") {
  const auto orbit = integrate_drift_orbit({{1.0, 2.0}, 0.0, 1.5, 0.0}, PotentialModel::zero(), kBump, 10.0, 1e-2);
  const double b0 = orbit.samples.front().b;
  double travel = 0.0, worst = 0.0;
  for (const auto& s : orbit.samples) {
    worst = std::max(worst, std::abs(s.b - b0));
    travel = std::max(travel, std::hypot(s.x_perp.x - 1.0, s.x_perp.y - 2.0));
  }
  CHECK(travel > 0.1);
  CHECK(worst <= 1e-9);
  CHECK(relative_mu_drift(orbit) <= 1e-9);
}

TEST_CASE("magnetic moment is invariant along drift orbits") {
  const auto phi = PotentialModel::cellular(0.1, {1.0, 1.0});
  for (Vec2 x : {Vec2{1.0, 2.0}, Vec2{3.0, 1.5}, Vec2{4.5, 4.0}}) {
    const auto orbit = integrate_drift_orbit({x, 0.0, 1.0, 0.0}, phi, kBump, 10.0, 1e-3);
    CHECK(relative_mu_drift(orbit) <= 1e-10);
  }
}

TEST_CASE("orbits leaving the valid region abort") {
  const auto ramp = fields::MagneticFieldModel::linear_ramp(1.0, {0.0, -0.2}, 0.5);
  CHECK_THROWS_AS(integrate_drift_orbit({{0.0, 0.0}, 0.0, 1.0, 0.0}, PotentialModel::uniform_field({-1.0, 0.0}), ramp, 50.0, 0.01),
                  ModelViolation);
  CHECK_THROWS_AS(integrate_drift_orbit({}, PotentialModel::zero(), ramp, 1.0, 0.0), InvalidParameter);
}

TEST_CASE("chart transform") {
  const TorusGrid g = TorusGrid::square(8);
  SUBCASE("support maps to mu = w^2 / 2b") {
    ReducedDistribution F(g, 41, 1.0, 3, 1.0);
    F.fill([](const Vec3&, double, double) { return 1.0; });
    const auto b2 = fields::MagneticFieldModel::uniform(2.0, 0.5);
    const auto r = chart_transform(F, b2, VelocityChart::mu);
    CHECK(r.distribution.chart() == VelocityChart::mu);
    CHECK(r.distribution.perp_max() == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("Gaussian mass and round trip") {
    ReducedDistribution F(g, 81, 7.0, 5, 3.0);
    F.fill([](const Vec3& x, double w, double v) { return (1.0 + 0.3 * std::sin(x.x)) * std::exp(-w * w / 2 - v * v / 2); });
    const double m0 = total_mass(F, kBump);
    const auto mu = chart_transform(F, kBump, VelocityChart::mu, 161);
    CHECK(std::abs(total_mass(mu.distribution, kBump) - m0) <= 1e-6 * m0);
    const auto back = chart_transform(mu.distribution, kBump, VelocityChart::w, 81, 7.0);
    CHECK(back.distribution.same_shape(F));
    CHECK(max_abs_diff(back.distribution.values(), F.values()) <= 1e-3);
    CHECK(std::abs(total_mass(back.distribution, kBump) - m0) <= 1e-6 * m0);
  }
  SUBCASE("truncating the support is reported") {
    ReducedDistribution F(g, 41, 4.0, 3, 1.0);
    F.fill([](const Vec3&, double, double) { return 1.0; });
    CHECK_THROWS_AS(chart_transform(F, kBump, VelocityChart::mu, 41, 1.0), InsufficientData);
  }
}

TEST_CASE("uniform density is a frozen equilibrium") {
  const TorusGrid g = TorusGrid::square(32);
  Gc2dSolver s(ScalarField(g, 1.3), 1.3);
  for (int n = 0; n < 20; ++n) s.step(0.1);
  CHECK(max_abs_diff(s.state().density.values, std::vector<double>(g.size(), 1.3)) <= 1e-12);
  CHECK(max_abs_diff(s.state().phi.values, std::vector<double>(g.size(), 0.0)) <= 1e-12);
  CHECK(reduced_energy_density(s.state()).field <= 1e-24);
}

TEST_CASE("two-mode density follows the linearized advection") {
  // G = 1 + d (cos x + cos 2y): phi = d (cos x + cos(2y)/4) and
  // dG/dt = -U . grad G = -(3/2) d^2 sin x sin 2y.
  const double d = 0.01, dt = 0.05;
  const TorusGrid g = TorusGrid::square(64);
  const auto g0 = ScalarField::sample(g, [&](const Vec3& x) { return 1.0 + d * (std::cos(x.x) + std::cos(2 * x.y)); });
  Gc2dSolver s(g0, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.node(i);
    CHECK(s.state().phi[i] == doctest::Approx(d * (std::cos(x.x) + 0.25 * std::cos(2 * x.y))).epsilon(1e-12));
  }
  s.step(dt);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.node(i);
    const double oracle = -dt * 1.5 * d * d * std::sin(x.x) * std::sin(2 * x.y);
    worst = std::max(worst, std::abs(s.state().density[i] - g0[i] - oracle));
    scale = std::max(scale, std::abs(oracle));
  }
  CHECK(worst <= 0.01 * scale);
}

TEST_CASE("Kelvin-Helmholtz run conserves mass and energy and decays L2") {
  Gc2dConfig c;
  c.initial = kelvin_helmholtz(64);
  c.dt = 0.1;
  c.t_end = 4.0;
  c.output_every = 1;
  const auto r = run_guiding_center_2d(c);
  const auto& first = r.records.front();
  double previous_l2 = first.l2;
  bool monotone = true;
  for (const auto& rec : r.records) {
    CHECK(std::abs(rec.mass - first.mass) <= 1e-10 * first.mass);
    CHECK(std::abs(rec.l1 - first.l1) <= 1e-10 * first.l1);
    CHECK(std::abs(rec.total_energy - first.total_energy) <= 0.01 * first.total_energy);
    CHECK(rec.total_energy == rec.kinetic_energy + rec.field_energy);
    monotone = monotone && rec.l2 <= previous_l2 * (1.0 + 1e-14);
    previous_l2 = rec.l2;
  }
  CHECK(monotone);
  CHECK(r.records.back().l2 >= 0.98 * first.l2);
  const double fe0 = r.field_energy_integral.front();
  CHECK(std::abs(r.field_energy_integral.back() - fe0) <= 0.01 * fe0);
}

TEST_CASE("order-0 residual of the guiding-center run is second order in the grid") {
  // dt scales with h; residual at t = 1 from three consecutive snapshots.
  auto residual = [](int n) {
    const double dt = 6.4 / n;
    const long mid = std::lround(1.0 / dt);
    Gc2dConfig c;
    c.initial = kelvin_helmholtz(n);
    c.dt = dt;
    c.t_end = (mid + 1) * dt;
    c.output_every = 1000000;
    std::vector<ScalarField> dens;
    ScalarField phi_mid;
    c.observer = [&](const Gc2dSnapshot& s) {
      if (s.step >= mid - 1 && s.step <= mid + 1) dens.push_back(s.state->density);
      if (s.step == mid) phi_mid = s.state->phi;
    };
    run_guiding_center_2d(c);
    const TorusGrid& g = phi_mid.grid;
    auto family = [&](const ScalarField& G) {
      ReducedDistribution F(g, 9, 6.0, 5, 4.0);
      F.fill([&](const Vec3& x, double w, double v) {
        (void)x;
        return std::exp(-(w * w + v * v) / 2) / std::pow(kTwoPi, 1.5);
      });
      for (int j = 0; j < F.n_perp(); ++j) {
        for (int k = 0; k < F.n_par(); ++k) {
          auto slab = F.slab(j, k);
          for (std::size_t i = 0; i < slab.size(); ++i) slab[i] *= G[i];
        }
      }
      return F;
    };
    const auto before = family(dens[0]), now = family(dens[1]), after = family(dens[2]);
    const auto dFdt = gyro::centered_time_derivative(before, after, dt);
    const auto uniform = fields::MagneticFieldModel::uniform(1.0, 0.5);
    return gyro::solvability_residual_order0(now, ReducedDistribution::zeros_like(now), phi_mid,
                                             ScalarField(g), uniform, dFdt)
        .norm;
  };
  const double r64 = residual(64), r128 = residual(128), r256 = residual(256);
  CHECK(r64 / r128 >= 3.4);
  CHECK(r64 / r128 <= 4.6);
  CHECK(r128 / r256 >= 3.4);
  CHECK(r128 / r256 <= 4.6);
}

TEST_CASE("steady vortex is a fixed point of the reduced dynamics") {
  const SteadyVortex v{0.2, {1.0, 1.0}, 1.0};
  const TorusGrid g = TorusGrid::square(64);
  const auto G = v.density(g);
  PoissonSolver solver(g);
  const auto sol = solver.solve(G, v.rho0);
  CHECK(max_abs_diff(sol.phi.values, v.potential(g).values) <= 1e-12);
  Gc2dSolver s(G, v.rho0);
  for (int n = 0; n < 10; ++n) s.step(0.1);
  CHECK(max_abs_diff(s.state().density.values, G.values) <= 1e-4);
}

TEST_CASE("reduced energy of an empty state") {
  const TorusGrid g = TorusGrid::square(16);
  Gc2dState st{ScalarField(g), ScalarField(g), 0.0, 0.0};
  const auto e = reduced_energy_density(st);
  CHECK(e.kinetic == 0.0);
  CHECK(e.field == 0.0);
  CHECK(e.total == 0.0);
}
