#pragma once

#include <optional>

#include "driftkin/poisson/grid_field.hpp"
#include "driftkin/poisson/spectral.hpp"

namespace driftkin {

class ReducedDistribution;

struct PoissonSolution {
  ScalarField phi;
  VectorField electric;  // E = -grad phi
  /// Mean of the source that had to be removed to make the periodic problem solvable.
  double removed_mean = 0.0;
};

/// Spectral solver for -Laplace(phi) = rho - rho0 on the torus.
///
/// phi carries the zero-mean gauge. Any residual mean of the source is
/// subtracted and reported in PoissonSolution::removed_mean. Derivatives drop
/// the Nyquist mode; the inverse Laplacian keeps it.
class PoissonSolver {
public:
  explicit PoissonSolver(const TorusGrid& grid);

  const TorusGrid& grid() const { return ops_.grid(); }
  PoissonSolution solve(const ScalarField& rho, std::optional<double> background = std::nullopt);
  /// Potential only, same conventions.
  ScalarField potential(const ScalarField& rho, std::optional<double> background = std::nullopt,
                        double* removed_mean = nullptr);
  SpectralOps& ops() { return ops_; }

private:
  SpectralOps ops_;
  std::vector<std::complex<double>> spectrum_;
  std::vector<double> inv_k2_;
};

PoissonSolution solve_poisson(const ScalarField& rho, std::optional<double> background = std::nullopt);

/// grad phi (callers negate for E).
VectorField gradient_spectral(const ScalarField& phi);

/// rho_Q = 2 pi \int Q w dw dv_par, trapezoid in both velocity directions.
ScalarField density_from_reduced(const ReducedDistribution& q);

}  // namespace driftkin
