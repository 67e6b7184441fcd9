#pragma once

#include <cstdint>

#include "driftkin/diagnostics/invariants.hpp"
#include "driftkin/guiding_center/gc2d.hpp"
#include "driftkin/vec.hpp"

namespace driftkin::kinetic {

/// Steps per gyroperiod when the resolution is refined together with eps:
/// round(n_ref * eps_ref / eps), at least n_ref when eps >= eps_ref.
int corefined_steps_per_period(int n_ref, double eps_ref, double eps);

enum class DriftKind { exb, gradb };

/// Single-particle full-orbit drift measurement.
///   exb:   uniform b = b0, E = (-e0, 0, 0)
///   gradb: linear-ramp b = b0 + gradient . x, phi = 0
/// The particle starts at x0 with v = (w, 0, 0); the drift is measured over
/// n_periods whole gyroperiods (t-time, from b at the orbit mean position).
struct DriftStudyConfig {
  DriftKind kind = DriftKind::exb;
  double epsilon = 0.05;
  double b0 = 1.0;
  double alpha = 0.5;
  double e0 = 1.0;
  Vec2 gradient{0.1, 0.0};
  double w = 1.0;
  Vec2 x0{};
  int steps_per_period = 64;
  int n_periods = 10;
};

struct DriftStudyResult {
  Vec2 measured{};
  Vec2 predicted{};
  double relative_error = 0.0;
  double gyroperiod = 0.0;  // t-time
  diag::Trajectory trajectory;
};

DriftStudyResult run_drift_study(const DriftStudyConfig& config);

/// PIC run of the steady-vortex density (b = 1, ring velocities, quiet
/// lattice start) compared with drift orbits in the initial discrete field.
struct ReducedComparisonConfig {
  int grid_n = 64;
  gc::SteadyVortex vortex{0.4, {1.0, 1.0}, 1.0};
  double ring_speed = 1.0;
  std::size_t n_particles = 10000;
  std::uint64_t seed = 3;
  double t_end = 1.0;
  int steps_per_period_ref = 32;
  double eps_ref = 0.1;
  double orbit_dt = 0.02;
  int threads = 1;
};

struct ReducedComparison {
  /// RMS distance between marker positions and the drift orbits started at
  /// the initial marker positions, averaged over the final gyroperiod.
  double marker_error = 0.0;
  /// Same with guiding centers x + (eps/b) v^perp on both sides.
  double gc_error = 0.0;
  /// RMS marker displacement over the run.
  double displacement = 0.0;
  long steps = 0;
  int steps_per_period = 0;
};

ReducedComparison compare_pic_with_drift_orbits(const ReducedComparisonConfig& config, double eps);

}  // namespace driftkin::kinetic
