#pragma once

#include <vector>

#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/guiding_center/reduced_distribution.hpp"
#include "driftkin/poisson/grid_field.hpp"

namespace driftkin::gyro {

inline constexpr double kDefaultSolvabilityTolerance = 1e-8;

/// f(x, w, theta, v_par): one ReducedDistribution per uniform gyrophase node.
class GyroResolvedField {
public:
  GyroResolvedField(const ReducedDistribution& shape, int n_theta);

  int n_theta() const { return static_cast<int>(phases_.size()); }
  double theta(int m) const { return kTwoPi * m / n_theta(); }
  ReducedDistribution& phase(int m) { return phases_[m]; }
  const ReducedDistribution& phase(int m) const { return phases_[m]; }
  const ReducedDistribution& shape() const { return phases_.front(); }

  /// Pi applied nodewise.
  ReducedDistribution gyroaverage() const;

private:
  std::vector<ReducedDistribution> phases_;
};

/// G = w grad_perp F - grad_perp phi_F dF/dw, componentwise.
struct GVector {
  ReducedDistribution x;
  ReducedDistribution y;
};

struct Residual {
  ReducedDistribution field;
  double norm = 0.0;  // discrete L2, measure w dw dv_par dx
};

/// Discrete derivatives shared by the hierarchy and the defect harness:
/// spectral along x, second-order centered in the velocity directions with
/// second-order one-sided closures at the ends.
namespace stencil {
ReducedDistribution d_x(const ReducedDistribution& f, int axis);
ReducedDistribution d_perp(const ReducedDistribution& f);
ReducedDistribution d_par(const ReducedDistribution& f);
/// d/dx_par of a field; zero on 2D grids (nothing depends on x_par).
std::vector<double> d_parallel_position(const ScalarField& phi);
double l2_norm(const ReducedDistribution& f);
}  // namespace stencil

GVector vector_G(const ReducedDistribution& F, const ScalarField& phi_F);

/// v_par dF/dx_par - (dphi_F/dx_par) dF/dv_par.
Residual solvability_residual_parallel(const ReducedDistribution& F, const ScalarField& phi_F);

/// f1 = -(1/b) e_theta . G + P. Throws NotSolvable when the parallel
/// residual norm exceeds `tolerance`.
GyroResolvedField construct_f1(const ReducedDistribution& F, const ScalarField& phi_F,
                               const fields::MagneticFieldModel& model,
                               const ReducedDistribution& P, int n_theta,
                               double tolerance = kDefaultSolvabilityTolerance);

/// dF/dt + U_perp . grad_perp F + u_w dF/dw - (dphi_P/dx_par) dF/dv_par
///   + v_par dP/dx_par - (dphi_F/dx_par) dP/dv_par
Residual solvability_residual_order0(const ReducedDistribution& F, const ReducedDistribution& P,
                                     const ScalarField& phi_F, const ScalarField& phi_P,
                                     const fields::MagneticFieldModel& model,
                                     const ReducedDistribution& dF_dt);

/// Second-order centered time derivative from three equally spaced snapshots.
ReducedDistribution centered_time_derivative(const ReducedDistribution& before,
                                             const ReducedDistribution& after, double dt);

}  // namespace driftkin::gyro
