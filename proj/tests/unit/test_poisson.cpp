#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <random>

#include "driftkin/error.hpp"
#include "driftkin/guiding_center/reduced_distribution.hpp"
#include "driftkin/poisson/field_io.hpp"
#include "driftkin/poisson/poisson.hpp"

using namespace driftkin;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::function<double(std::size_t)>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b(i)));
  return m;
}

// Random band-limited field: a few low modes with random amplitudes.
ScalarField band_limited(const TorusGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Mode { int kx, ky; double a, p; };
  std::vector<Mode> modes;
  for (int kx = 0; kx <= 3; ++kx) {
    for (int ky = -3; ky <= 3; ++ky) modes.push_back({kx, ky, u(rng), 3.0 * u(rng)});
  }
  return ScalarField::sample(g, [&](const Vec3& x) {
    double v = 0.0;
    for (const auto& m : modes) v += m.a * std::cos(m.kx * x.x + m.ky * x.y + m.p);
    return v;
  });
}

}  // namespace

TEST_CASE("grids reject bad shapes and wrap indices") {
  CHECK_THROWS_AS(TorusGrid(2, {1.0, 1.0, 1.0}, {12, 16, 1}), InvalidParameter);
  CHECK_THROWS_AS(TorusGrid(2, {1.0, 1.0, 1.0}, {4, 16, 1}), InvalidParameter);
  CHECK_THROWS_AS(TorusGrid(2, {-1.0, 1.0, 1.0}, {8, 8, 1}), InvalidParameter);
  const TorusGrid g = TorusGrid::square(8);
  CHECK(g.index(-1, 0) == g.index(7, 0));
  CHECK(g.index(8, 9) == g.index(0, 1));
  CHECK(g.spacing(0) == doctest::Approx(kTwoPi / 8));
}

TEST_CASE("single-mode sources are solved exactly") {
  const TorusGrid cube = TorusGrid::cube(16);
  const auto rho = ScalarField::sample(cube, [](const Vec3& x) { return std::sin(x.x); });
  const auto sol = solve_poisson(rho);
  CHECK(max_abs_diff(sol.phi.values, [&](std::size_t i) { return std::sin(cube.node(i).x); }) <= 1e-12);
  CHECK(max_abs_diff(sol.electric[0], [&](std::size_t i) { return -std::cos(cube.node(i).x); }) <= 1e-12);
  CHECK(max_abs_diff(sol.electric[1], [](std::size_t) { return 0.0; }) <= 1e-12);
  CHECK(max_abs_diff(sol.electric[2], [](std::size_t) { return 0.0; }) <= 1e-12);

  const TorusGrid sq = TorusGrid::square(32);
  const auto rho2 = ScalarField::sample(sq, [](const Vec3& x) { return std::sin(x.x) + std::sin(2 * x.y); });
  const auto sol2 = solve_poisson(rho2);
  CHECK(max_abs_diff(sol2.phi.values, [&](std::size_t i) {
          const Vec3 x = sq.node(i);
          return std::sin(x.x) + std::sin(2 * x.y) / 4;
        }) <= 1e-12);
}

TEST_CASE("neutral source gives zero field") {
  const TorusGrid g = TorusGrid::square(16);
  const ScalarField rho(g, 2.5);
  const auto sol = solve_poisson(rho, 2.5);
  CHECK(max_abs_diff(sol.phi.values, [](std::size_t) { return 0.0; }) == 0.0);
  CHECK(max_abs_diff(sol.electric[0], [](std::size_t) { return 0.0; }) == 0.0);
}

TEST_CASE("mean of the source is removed and reported") {
  const TorusGrid g = TorusGrid::square(16);
  const auto rho = ScalarField::sample(g, [](const Vec3& x) { return 3.0 + std::cos(x.y); });
  const auto sol = solve_poisson(rho);
  CHECK(sol.removed_mean == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(sol.phi.mean()) <= 1e-15);
}

TEST_CASE("non-finite sources are data errors") {
  const TorusGrid g = TorusGrid::square(8);
  ScalarField rho(g);
  rho[3] = std::nan("");
  CHECK_THROWS_AS(solve_poisson(rho), DataError);
}

TEST_CASE("spectral gradient") {
  const TorusGrid g = TorusGrid::cube(16);
  const auto c = gradient_spectral(ScalarField(g, 4.0));
  for (int a = 0; a < 3; ++a) CHECK(max_abs_diff(c[a], [](std::size_t) { return 0.0; }) <= 1e-14);
  const auto s = gradient_spectral(ScalarField::sample(g, [](const Vec3& x) { return std::sin(x.x); }));
  CHECK(max_abs_diff(s[0], [&](std::size_t i) { return std::cos(g.node(i).x); }) <= 1e-13);
  CHECK(max_abs_diff(s[1], [](std::size_t) { return 0.0; }) <= 1e-13);
}

TEST_CASE("spectral gradient agrees with fourth-order differences at fourth order") {
  auto error_at = [](int n) {
    const TorusGrid g = TorusGrid::square(n);
    const auto phi = band_limited(g, 5);
    const auto grad = gradient_spectral(phi);
    const double h = g.spacing(0);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        auto at = [&](int a, int b) { return phi[g.index(a, b)]; };
        const double fd = (-at(i + 2, j) + 8 * at(i + 1, j) - 8 * at(i - 1, j) + at(i - 2, j)) / (12 * h);
        err = std::max(err, std::abs(grad[0][g.index(i, j)] - fd));
      }
    }
    return err;
  };
  const double e1 = error_at(32), e2 = error_at(64);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("Laplacian is self-adjoint against the gradient pairing") {
  const TorusGrid g = TorusGrid::square(32);
  const auto phi = band_limited(g, 1), psi = band_limited(g, 2);
  // -Laplace(phi) = rho  <=>  phi = solve(rho): use the solver in reverse by
  // taking rho = -Laplace(phi) computed from two spectral derivatives.
  const auto gp = gradient_spectral(phi), gq = gradient_spectral(psi);
  ScalarField lap(g);
  for (int a = 0; a < 2; ++a) {
    ScalarField comp(g);
    comp.values = gp[a];
    const auto d = gradient_spectral(comp);
    for (std::size_t i = 0; i < g.size(); ++i) lap[i] -= d[a][i];
  }
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    lhs += lap[i] * psi[i];
    rhs += gp[0][i] * gq[0][i] + gp[1][i] * gq[1][i];
  }
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  // and the solver inverts it
  const auto sol = solve_poisson(lap);
  CHECK(max_abs_diff(sol.phi.values, [&](std::size_t i) { return phi[i] - phi.mean(); }) <= 1e-12);
}

TEST_CASE("shifting the source by one node shifts the potential") {
  const TorusGrid g = TorusGrid::square(16);
  const auto rho = band_limited(g, 9);
  ScalarField shifted(g);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) shifted[g.index(i + 1, j)] = rho[g.index(i, j)];
  }
  const auto a = solve_poisson(rho).phi, b = solve_poisson(shifted).phi;
  double err = 0.0;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) err = std::max(err, std::abs(b[g.index(i + 1, j)] - a[g.index(i, j)]));
  }
  CHECK(err <= 1e-13);
}

TEST_CASE("energy identity holds to second order in the time step") {
  const TorusGrid g = TorusGrid::square(32);
  auto rho_at = [&](double t) {
    return ScalarField::sample(g, [t](const Vec3& x) {
      return 1.0 + std::sin(x.x - t) * std::cos(2 * t) + 0.5 * std::cos(2 * x.y + x.x + t * t);
    });
  };
  auto defect = [&](double h) {
    const double t = 0.7;
    const auto a = solve_poisson(rho_at(t - h)), b = solve_poisson(rho_at(t)), c = solve_poisson(rho_at(t + h));
    const auto ra = rho_at(t - h), rc = rho_at(t + h);
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) lhs += (rc[i] - ra[i]) / (2 * h) * b.phi[i];
    lhs *= g.cell_volume();
    const double rhs = 0.5 * (c.electric.squared_norm_integral() - a.electric.squared_norm_integral()) / (2 * h);
    return std::abs(lhs - rhs) / std::abs(rhs);
  };
  const double d1 = defect(0.02), d2 = defect(0.01);
  CHECK(d1 < 1e-3);
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("reduced density quadrature") {
  const TorusGrid g = TorusGrid::square(8);
  ReducedDistribution q(g, 81, 9.0, 81, 9.0);
  CHECK(max_abs_diff(density_from_reduced(q).values, [](std::size_t) { return 0.0; }) == 0.0);

  // Unit Maxwellian: closed form 1. The trapezoid in w starts at the axis where
  // w exp(-w^2/2) has slope 1, so the error is h^2/12 to leading order.
  auto maxwellian_error = [&](int n) {
    ReducedDistribution m(g, n, 9.0, n, 9.0);
    const double norm = std::pow(kTwoPi, -1.5);
    m.fill([norm](const Vec3&, double w, double v) { return norm * std::exp(-0.5 * (w * w + v * v)); });
    const double h = m.d_perp();
    const double err = max_abs_diff(density_from_reduced(m).values, [](std::size_t) { return 1.0; });
    CHECK(err == doctest::Approx(h * h / 12).epsilon(0.02));
    return err;
  };
  CHECK(maxwellian_error(81) / maxwellian_error(161) == doctest::Approx(4.0).epsilon(0.02));

  // Support in w > w_max / 2 only: doubling the w range (same spacing) leaves rho unchanged.
  ReducedDistribution a(g, 41, 4.0, 9, 2.0), b(g, 81, 8.0, 9, 2.0);
  auto bump = [](const Vec3&, double w, double v) {
    return (w > 2.5 && w < 3.5) ? std::pow(std::cos(kPi * (w - 3.0)), 2) * std::exp(-v * v) : 0.0;
  };
  a.fill(bump);
  b.fill(bump);
  const auto ra = density_from_reduced(a), rb = density_from_reduced(b);
  CHECK(max_abs_diff(ra.values, [&](std::size_t i) { return rb[i]; }) < 1e-12);
}

TEST_CASE("field files round-trip") {
  const TorusGrid g = TorusGrid::square(8);
  const auto f = band_limited(g, 3);
  const auto dir = std::filesystem::temp_directory_path() / "driftkin_test_io";
  std::filesystem::create_directories(dir);
  io::write_raw(f, dir / "phi");
  const auto back = io::read_raw_scalar(dir / "phi");
  CHECK(back.values == f.values);
  io::write_csv(f, dir / "phi.csv");
  CHECK(std::filesystem::file_size(dir / "phi.csv") > 0);
  std::filesystem::remove_all(dir);
}
