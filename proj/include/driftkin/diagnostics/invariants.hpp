#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "driftkin/diagnostics/record.hpp"
#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/guiding_center/reduced_distribution.hpp"
#include "driftkin/kinetic/particles.hpp"
#include "driftkin/poisson/grid_field.hpp"

namespace driftkin::diag {

/// Kinetic sum w |v|^2 / 2 over the markers, field part (1/2) \int |E|^2.
EnergyParts energy_full(const kinetic::ParticleEnsemble& ens, const VectorField& electric);

/// Kinetic \int (w^2 + v_par^2)/2 F w dw dv_par dx, field (1/4 pi) \int |E_F|^2.
/// Throws InvalidParameter for mu-chart input.
EnergyParts energy_reduced(const ReducedDistribution& F, const VectorField& electric);

/// p in {1, 2, inf}; measure w dw dv_par dx, or b dmu dv_par dx in the
/// mu-chart (which needs `model`).
double lp_norm_reduced(const ReducedDistribution& F, double p,
                       const fields::MagneticFieldModel* model = nullptr);

/// max |d/dx_par \int v_par F dv_par| over (x, w), divided by the largest
/// nodal \int |v_par F| dv_par. Zero on 2D grids and for F = 0.
double longitudinal_momentum_variation(const ReducedDistribution& F);

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec2> x;  // unwrapped
};

/// (x(t0 + n T_g) - x(t0)) / (n T_g) with t0 the first sample; positions
/// between samples are interpolated linearly. Throws InsufficientData when
/// the trajectory is shorter than the window.
Vec2 drift_measurement(const Trajectory& trajectory, double gyroperiod, int n_periods);

struct ConvergenceRow {
  double epsilon = 0.0;
  double error = kAbsent;
  double ratio = kAbsent;  // error(previous eps) / error(this eps)
  bool failed = false;
  std::string failure;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log(error) against log(eps); NaN when flagged.
  double fitted_order = kAbsent;
  /// Set when every error is at or below 1e-10, so no order can be fitted.
  bool trivial = false;
};

/// Evaluates `error_at(eps)` for each eps (strictly decreasing, >= 3
/// entries). Exceptions from a sub-run become failure rows.
ConvergenceTable convergence_study(const std::function<double(double)>& error_at,
                                   const std::vector<double>& eps_list);

/// Array of {epsilon, error, ratio} objects (null for absent values).
void write_convergence_json(const ConvergenceTable& table, const std::filesystem::path& path);

}  // namespace driftkin::diag
