#pragma once

#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/guiding_center/reduced_distribution.hpp"

namespace driftkin::gc {

struct ChartTransformResult {
  ReducedDistribution distribution;
  /// Largest relative rescaling applied to a (x, v_par) column to match its
  /// source mass; an interpolation-quality indicator.
  double mass_correction = 0.0;
};

/// Resamples F between the w-chart and the mu-chart (mu = w^2 / 2b(x_perp))
/// by cubic interpolation along the perpendicular axis, then rescales each
/// (x, v_par) column so its mass under the target measure matches the source.
///
/// `target_max` <= 0 picks the range that holds the full source support.
/// Throws InsufficientData when the target range cuts off more than 1e-10 of
/// the source mass.
ChartTransformResult chart_transform(const ReducedDistribution& F,
                                     const fields::MagneticFieldModel& model,
                                     VelocityChart target, int n_target = 0,
                                     double target_max = 0.0);

/// \int F w dw dv_par dx (w-chart) or \int F b dmu dv_par dx (mu-chart).
double total_mass(const ReducedDistribution& F, const fields::MagneticFieldModel& model);

}  // namespace driftkin::gc
