#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "driftkin/diagnostics/invariants.hpp"
#include "driftkin/diagnostics/record.hpp"
#include "driftkin/error.hpp"
#include "driftkin/kinetic/particles.hpp"
#include "json.hpp"

using namespace driftkin;
using namespace driftkin::diag;

TEST_CASE("full-kinetic energy examples") {
  const TorusGrid cube = TorusGrid::cube(16);
  kinetic::ParticleEnsemble ens;
  auto e = energy_full(ens, VectorField(cube));
  CHECK(e.kinetic == 0.0);
  CHECK(e.field == 0.0);
  CHECK(e.total == 0.0);

  ens.resize(1);
  ens.weight[0] = 1.0;
  ens.vx[0] = 3.0;
  ens.vy[0] = 4.0;
  CHECK(energy_full(ens, VectorField(cube)).kinetic == 12.5);

  VectorField E(cube);
  for (std::size_t i = 0; i < cube.size(); ++i) E[0][i] = -std::cos(cube.node(i).x);
  e = energy_full(kinetic::ParticleEnsemble{}, E);
  CHECK(e.field == doctest::Approx(2.0 * kPi * kPi * kPi).epsilon(1e-13));
  CHECK(e.total == e.kinetic + e.field);
}

TEST_CASE("reduced energy") {
  const TorusGrid g = TorusGrid::square(8);
  ReducedDistribution F(g, 201, 10.0, 201, 10.0);
  CHECK(energy_reduced(F, VectorField(g)).total == 0.0);

  // \int (w^2+v^2)/2 e^{-(w^2+v^2)/2} w dw dv = (3/2) sqrt(2 pi).
  F.fill([](const Vec3&, double w, double v) { return std::exp(-(w * w + v * v) / 2); });
  const double exact = 1.5 * std::sqrt(kTwoPi) * kTwoPi * kTwoPi;
  CHECK(energy_reduced(F, VectorField(g)).kinetic == doctest::Approx(exact).epsilon(1e-3));

  VectorField E(g);
  for (std::size_t i = 0; i < g.size(); ++i) E[1][i] = std::sin(g.node(i).y);
  CHECK(energy_reduced(F, E).field == doctest::Approx(kTwoPi * kTwoPi * 0.5 / (4 * kPi)).epsilon(1e-13));

  ReducedDistribution mu(g, 5, 1.0, 3, 1.0, VelocityChart::mu);
  CHECK_THROWS_AS(energy_reduced(mu, VectorField(g)), InvalidParameter);
}

TEST_CASE("reduced Lp norms") {
  // Unit measure: L^2 (w_max^2 / 2) (2 par_max) = 1.
  ReducedDistribution F(TorusGrid::square(8, 1.0), 11, 1.0, 5, 1.0);
  F.fill([](const Vec3&, double, double) { return 1.0; });
  CHECK(lp_norm_reduced(F, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp_norm_reduced(F, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp_norm_reduced(F, INFINITY) == 1.0);

  for (double& v : F.values()) v *= -3.0;
  CHECK(lp_norm_reduced(F, 1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(lp_norm_reduced(F, 2) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(lp_norm_reduced(F, INFINITY) == 3.0);
  CHECK_THROWS_AS(lp_norm_reduced(F, 3), InvalidParameter);

  const TorusGrid g = TorusGrid::square(8);
  ReducedDistribution G(g, 201, 10.0, 201, 10.0);
  G.fill([](const Vec3&, double w, double v) { return std::exp(-(w * w + v * v) / 2); });
  // \int e^{-(w^2+v^2)} w dw dv = sqrt(pi) / 2.
  const double l2 = std::sqrt(0.5 * std::sqrt(kPi) * kTwoPi * kTwoPi);
  CHECK(lp_norm_reduced(G, 2) == doctest::Approx(l2).epsilon(1e-3));
  CHECK(lp_norm_reduced(G, 1) == doctest::Approx(std::sqrt(kTwoPi) * kTwoPi * kTwoPi).epsilon(1e-3));
}

TEST_CASE("longitudinal momentum variation") {
  const TorusGrid cube = TorusGrid::cube(8);
  ReducedDistribution F(cube, 9, 4.0, 17, 4.0);
  F.fill([](const Vec3& x, double w, double v) { return (1.0 + 0.5 * std::sin(x.z)) * std::exp(-w * w - v * v); });
  CHECK(longitudinal_momentum_variation(F) <= 1e-14);

  F.fill([](const Vec3& x, double w, double v) { return (1.0 + 0.5 * std::sin(x.x)) * (1.0 + v) * std::exp(-w * w - v * v); });
  CHECK(longitudinal_momentum_variation(F) <= 1e-12);

  F.fill([](const Vec3& x, double, double v) { return std::sin(x.z) * v * std::exp(-v * v); });
  CHECK(longitudinal_momentum_variation(F) > 1e-2);

  ReducedDistribution flat(TorusGrid::square(8), 5, 1.0, 5, 1.0);
  flat.fill([](const Vec3&, double, double v) { return v; });
  CHECK(longitudinal_momentum_variation(flat) == 0.0);
  CHECK(longitudinal_momentum_variation(ReducedDistribution(cube, 5, 1.0, 5, 1.0)) == 0.0);
}

TEST_CASE("drift measurement") {
  const double T = 0.1;
  Trajectory gyration;
  for (int n = 0; n <= 400; ++n) {
    const double t = n * T / 64;
    gyration.t.push_back(t);
    gyration.x.push_back({0.2 * std::cos(kTwoPi * t / T), -0.2 * std::sin(kTwoPi * t / T)});
  }
  const Vec2 u0 = drift_measurement(gyration, T, 5);
  CHECK(std::abs(u0.x) <= 1e-12);
  CHECK(std::abs(u0.y) <= 1e-12);

  Trajectory line;
  for (int n = 0; n <= 10; ++n) {
    line.t.push_back(0.37 * n);
    line.x.push_back({1.0 + 0.5 * 0.37 * n, -2.0 * 0.37 * n});
  }
  const Vec2 u = drift_measurement(line, 1.0, 3);
  CHECK(u.x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(u.y == doctest::Approx(-2.0).epsilon(1e-12));

  CHECK_THROWS_AS(drift_measurement(line, 1.0, 4), InsufficientData);
  CHECK_THROWS_AS(drift_measurement(Trajectory{{0.0}, {{0.0, 0.0}}}, 1.0, 1), InsufficientData);
  CHECK_THROWS_AS(drift_measurement(line, 0.0, 1), InvalidParameter);
}

TEST_CASE("convergence studies") {
  const std::vector<double> eps{0.1, 0.05, 0.025};
  auto first = convergence_study([](double e) { return 3.0 * e; }, eps);
  REQUIRE(first.rows.size() == 3);
  CHECK(std::isnan(first.rows[0].ratio));
  CHECK(first.rows[1].ratio == doctest::Approx(2.0));
  CHECK(first.rows[2].ratio == doctest::Approx(2.0));
  CHECK(first.fitted_order == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!first.trivial);

  const auto trivial = convergence_study([](double) { return 0.0; }, eps);
  CHECK(trivial.trivial);
  CHECK(std::isnan(trivial.fitted_order));

  const auto partial = convergence_study(
      [](double e) {
        if (e < 0.04) throw SolverFailure("blew up");
        return e * e;
      },
      eps);
  CHECK(!partial.rows[1].failed);
  CHECK(partial.rows[2].failed);
  CHECK(partial.rows[2].failure.find("blew up") != std::string::npos);
  CHECK(std::isnan(partial.rows[2].error));

  CHECK_THROWS_AS(convergence_study([](double e) { return e; }, {0.1, 0.05}), InvalidParameter);
  CHECK_THROWS_AS(convergence_study([](double e) { return e; }, {0.1, 0.2, 0.05}), InvalidParameter);

  const auto path = std::filesystem::temp_directory_path() / "driftkin_convergence.json";
  write_convergence_json(partial, path);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  CHECK(j[0]["epsilon"] == 0.1);
  CHECK(j[0]["ratio"].is_null());
  CHECK(j[1]["ratio"].get<double>() == doctest::Approx(4.0));
  CHECK(j[2]["error"].is_null());
  std::filesystem::remove(path);
}

TEST_CASE("diagnostics CSV format") {
  CHECK(csv_header() ==
        "t,s,kinetic_energy,field_energy,total_energy,mass,L1,L2,Linf,min_value,"
        "longitudinal_momentum_variation,constraint_residual,defect_norm,drift_estimate_x,drift_estimate_y");
  DiagnosticsRecord r;
  r.t = 0.1;
  r.set_energy(make_energy(1.5, 0.25));
  r.mass = 2.0;
  CHECK(r.total_energy == 1.75);
  CHECK(csv_row(r) == "0.1,nan,1.5,0.25,1.75,2,nan,nan,nan,nan,nan,nan,nan,nan,nan");
  r.drift_estimate = Vec2{0.5, -1.0 / 3.0};
  const auto row = csv_row(r);
  CHECK(row.substr(row.size() - 24) == ",0.5,-0.3333333333333333");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(1e-300) == "1e-300");

  const auto path = std::filesystem::temp_directory_path() / "driftkin_diag.csv";
  write_csv({r, r}, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == csv_header());
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);
  std::filesystem::remove(path);
}
