#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "driftkin/diagnostics/record.hpp"
#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/kinetic/particles.hpp"
#include "driftkin/poisson/grid_field.hpp"
#include "driftkin/poisson/poisson.hpp"

namespace driftkin::kinetic {

/// Self-consistent particle-in-cell state in fast time s; t = eps s.
/// rho, phi and electric always belong to the current particle positions.
struct PicState {
  ParticleEnsemble ensemble;
  TorusGrid grid;
  ScalarField rho;
  ScalarField phi;
  VectorField electric;
  double s = 0.0;
  double epsilon = 0.1;
  fields::MagneticFieldModel field;
  /// Neutralizing background in -Laplace(phi) = rho - rho0.
  double background = 0.0;
  int threads = 1;
  /// Shared by copies of the state; copies must not step concurrently.
  std::shared_ptr<PoissonSolver> solver;

  double t() const { return epsilon * s; }
};

/// Deposits and solves for the initial fields. The background defaults to
/// the mean deposited charge.
PicState make_pic_state(ParticleEnsemble ensemble, const TorusGrid& grid,
                        const fields::MagneticFieldModel& field, double epsilon,
                        std::optional<double> background = std::nullopt, int threads = 1);

/// Push with the current fields, wrap, advance s, then deposit and solve
/// for the new positions. Throws SolverFailure on non-finite particle data.
void step_pic(PicState& state, double ds);

/// Weighted mean of x + (eps/b) v^perp over the unwrapped positions.
Vec2 mean_guiding_center(const PicState& state);

/// Diagnostics row: energies, deposited charge as mass, and the mean
/// guiding-center velocity since `gc0` (t-time) as drift estimate.
diag::DiagnosticsRecord pic_record(const PicState& state, Vec2 gc0);

struct PicConfig {
  TorusGrid grid;
  fields::MagneticFieldModel field;
  double epsilon = 0.1;
  InitialSpec initial;
  std::size_t n_particles = 10000;
  std::uint64_t seed = 1;
  /// 0 selects gyroperiod / steps_per_period at the largest sampled b.
  double ds = 0.0;
  int steps_per_period = 64;
  long steps = 100;
  int output_every = 10;
  /// 0 disables snapshots.
  int snapshot_every = 0;
  std::optional<double> background;
  int threads = 1;
  std::filesystem::path out_dir;
};

struct PicResult {
  std::vector<diag::DiagnosticsRecord> records;
  PicState final_state;
  double ds = 0.0;
};

/// Writes diagnostics.csv and snapshot_<step>.json (+ raw arrays) into
/// out_dir when it is set. On a solver failure the rows written so far are
/// kept, error.json records the step, and the exception propagates.
PicResult run_full_kinetic(const PicConfig& config);

/// snapshot_<step>.json with rho/phi/particle raw arrays next to it.
void write_snapshot(const PicState& state, long step, const std::filesystem::path& dir);

}  // namespace driftkin::kinetic
