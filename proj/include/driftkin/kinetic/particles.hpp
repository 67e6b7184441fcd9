#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "driftkin/poisson/torus_grid.hpp"
#include "driftkin/simd/kernels.hpp"
#include "driftkin/vec.hpp"

namespace driftkin::kinetic {

/// Weighted markers in structure-of-arrays layout. Positions live in the
/// periodic box; `shift_*` accumulates the lattice translations removed by
/// wrapping so that unwrapped positions stay available.
struct ParticleEnsemble {
  std::vector<double> x, y, z;
  std::vector<double> vx, vy, vz;
  std::vector<double> weight;
  std::vector<double> shift_x, shift_y, shift_z;
  std::uint64_t seed = 0;

  std::size_t size() const { return x.size(); }
  void resize(std::size_t n);
  simd::ParticleView view();
  double total_weight() const;
  Vec3 position(std::size_t i) const { return {x[i], y[i], z[i]}; }
  Vec3 unwrapped(std::size_t i) const {
    return {x[i] + shift_x[i], y[i] + shift_y[i], z[i] + shift_z[i]};
  }
  Vec3 velocity(std::size_t i) const { return {vx[i], vy[i], vz[i]}; }
  /// Wraps into [0, L) along every axis of `grid` and records the shifts.
  void wrap(const TorusGrid& grid);
};

enum class SpatialProfile {
  uniform,  // uniform random positions
  lattice,  // quiet start on a regular sub-lattice
  point,    // all markers at `position`
};

enum class VelocityProfile {
  maxwellian,  // isotropic Gaussian with `thermal_speed`, shifted by `mean_velocity`
  ring,        // |v_perp| = ring_speed, uniform gyrophase, v_par Gaussian with `thermal_speed`
  delta,       // every marker gets `mean_velocity`
  prescribed,  // velocity_field(x)
};

/// Product of a spatial density and a velocity profile. Markers carry weight
/// density(x) V / N_p, so the deposited charge approximates `density`.
struct InitialSpec {
  SpatialProfile spatial = SpatialProfile::uniform;
  VelocityProfile velocity = VelocityProfile::maxwellian;
  std::function<double(const Vec3&)> density;  // empty: constant `density0`
  double density0 = 1.0;
  Vec3 position{};
  double thermal_speed = 1.0;
  double ring_speed = 1.0;
  Vec3 mean_velocity{};
  std::function<Vec3(const Vec3&)> velocity_field;
};

/// Deterministic in (spec, n_p, seed). Lattice starts use the largest
/// sub-lattice with at most n_p nodes whose shape follows the grid aspect.
/// Throws InvalidParameter for negative or non-normalizable densities.
ParticleEnsemble sample_initial(const InitialSpec& spec, const TorusGrid& grid, std::size_t n_p,
                                std::uint64_t seed);

}  // namespace driftkin::kinetic
