#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "driftkin/diagnostics/record.hpp"
#include "driftkin/poisson/grid_field.hpp"
#include "driftkin/poisson/poisson.hpp"

namespace driftkin::gc {

/// Kinetic-energy coefficient of the unit Maxwellian M normalized to
/// \int_{R^3} M dv = 1, under the reduced measure w dw dv_par:
/// \int (w^2 + v_par^2)/2 M w dw dv_par = 3 / (4 pi).
inline constexpr double kMaxwellianKineticCoefficient = 3.0 / (4.0 * kPi);

/// Density G(x_perp) of F = G M on a 2D torus with its potential.
struct Gc2dState {
  ScalarField density;
  ScalarField phi;
  double background = 0.0;
  double t = 0.0;
};

/// Kinetic part kappa \int G dx, field part (1/4 pi) \int |E|^2 dx.
diag::EnergyParts reduced_energy_density(const Gc2dState& state,
                                         double kinetic_coefficient = kMaxwellianKineticCoefficient);

/// \int |grad phi|^2 dx.
double field_energy_integral(const ScalarField& phi);

struct Gc2dSnapshot {
  int step = 0;
  double t = 0.0;
  const Gc2dState* state = nullptr;
};

struct Gc2dConfig {
  ScalarField initial;
  /// rho0 in -Laplace(phi) = G - rho0; defaults to the mean of the initial density.
  std::optional<double> background;
  double dt = 0.05;
  double t_end = 10.0;
  int output_every = 10;
  /// Empty: no files are written.
  std::filesystem::path out_dir;
  /// Called after every step (and once for the initial state).
  std::function<void(const Gc2dSnapshot&)> observer;
  bool verbose = false;
};

struct Gc2dResult {
  std::vector<diag::DiagnosticsRecord> records;
  /// \int |grad phi|^2 at each record.
  std::vector<double> field_energy_integral;
  Gc2dState final_state;
  int steps = 0;
  /// Largest number of substeps a step was split into by the displacement guard.
  int max_substeps = 1;
};

/// dG/dt + U_perp . grad G = 0 with U_perp = -(grad phi)^perp, b = 1.
///
/// Conservative semi-Lagrangian scheme: Strang splitting into x, y, x line
/// sweeps; each sweep traces the cell edges back along the line (RK4 with
/// cubic interpolation of the line velocity) and differences the cubic
/// interpolant of the periodic primitive. Mass is conserved to rounding.
/// The velocity is frozen at the half step (extrapolated from the two
/// previous steps; predictor-corrector on the first step). Steps whose
/// displacement exceeds two cells are split into substeps.
class Gc2dSolver {
public:
  Gc2dSolver(const ScalarField& initial, double background);

  const Gc2dState& state() const { return state_; }
  /// Advances by dt; returns the number of substeps used.
  int step(double dt);

private:
  void update_potential();
  void strang_step(std::vector<double>& g, double dt, const std::vector<double>& ux,
                   const std::vector<double>& uy) const;
  void velocity(const ScalarField& phi, std::vector<double>& ux, std::vector<double>& uy);
  void advance(double dt);

  Gc2dState state_;
  PoissonSolver poisson_;
  std::vector<double> ux_, uy_;
  std::vector<double> ux_prev_, uy_prev_;
  double dt_prev_ = 0.0;
  bool has_prev_ = false;
};

Gc2dResult run_guiding_center_2d(const Gc2dConfig& config);

/// Diagnostics row for a density state.
diag::DiagnosticsRecord gc2d_record(const Gc2dState& state);

/// G = 1 + a (sin y + delta cos(k x)) on [0, 4 pi) x [0, 2 pi).
ScalarField kelvin_helmholtz(int n, double amplitude = 0.5, double perturbation = 0.015,
                             double mode = 0.5);

/// phi = a sin(m_x x) sin(m_y y), G = rho0 + |m|^2 phi: G is a function of
/// phi, hence a steady state of the guiding-center flow.
struct SteadyVortex {
  double amplitude = 0.2;
  Vec2 mode{1.0, 1.0};
  double rho0 = 1.0;

  ScalarField potential(const TorusGrid& grid) const;
  ScalarField density(const TorusGrid& grid) const;
  double density_at(Vec2 x) const;
  double potential_at(Vec2 x) const;
  Vec2 potential_gradient_at(Vec2 x) const;
};

}  // namespace driftkin::gc
