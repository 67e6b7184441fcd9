#pragma once

#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/guiding_center/gc2d.hpp"
#include "driftkin/gyro/hierarchy.hpp"

namespace driftkin::kinetic {

struct DefectInputs {
  /// dF/dt; zero when absent.
  const ReducedDistribution* dF_dt = nullptr;
  /// df1/dt; zero when absent.
  const gyro::GyroResolvedField* df1_dt = nullptr;
  /// Potential of P; computed from the gyroaverage of f1 when absent.
  const ScalarField* phi_P = nullptr;
  double tolerance = gyro::kDefaultSolvabilityTolerance;
};

struct DefectReport {
  double norm = 0.0;
  double parallel_residual = 0.0;
  double order0_residual = 0.0;
};

/// Discrete L2 norm (measure w dw dtheta dv_par dx) of
///   eps dF^/dt + v . grad_x F^ + (E^ + (b/eps) v^perp) . grad_v F^,
/// F^ = F + eps f1, E^ = -grad(phi_F + eps phi_P), evaluated in polar velocity
/// coordinates with the hierarchy's discrete derivatives; the w = 0 nodes
/// carry zero weight and are skipped. Throws NotSolvable when either
/// solvability residual of F exceeds the tolerance.
DefectReport hilbert_defect(const ReducedDistribution& F, const gyro::GyroResolvedField& f1,
                            const ScalarField& phi_F, const fields::MagneticFieldModel& model,
                            double eps, const DefectInputs& inputs = {});

/// Steady member of the b = 1 family F = G(x_perp) M(w^2 + v_par^2), with G
/// the steady vortex and M the unit-density Maxwellian exp(-(w^2+v_par^2)/2)/(2 pi)^{3/2}.
struct VortexFamily {
  ReducedDistribution F;
  ScalarField phi;
};

struct VortexFamilyGrid {
  int grid_n = 32;
  int n_w = 65;
  double w_max = 7.0;
  int n_par = 9;
  double par_max = 4.0;
  int n_theta = 16;
};

VortexFamily steady_vortex_family(const gc::SteadyVortex& vortex, const VortexFamilyGrid& grid);

/// Defect of F + eps f1 with P = 0 for a family member.
DefectReport vortex_family_defect(const VortexFamily& family, int n_theta, double eps);

}  // namespace driftkin::kinetic
