#include "driftkin/poisson/poisson.hpp"

#include <cmath>

#include "driftkin/error.hpp"
#include "driftkin/guiding_center/reduced_distribution.hpp"
#include "driftkin/simd/kernels.hpp"

namespace driftkin {

PoissonSolver::PoissonSolver(const TorusGrid& grid)
    : ops_(grid), spectrum_(ops_.spectral_size()), inv_k2_(ops_.spectral_size()) {
  for (std::size_t k = 0; k < inv_k2_.size(); ++k) {
    const double k2 = ops_.wavenumber_squared(k);
    inv_k2_[k] = k2 > 0.0 ? 1.0 / k2 : 0.0;
  }
}

ScalarField PoissonSolver::potential(const ScalarField& rho, std::optional<double> background,
                                     double* removed_mean) {
  if (!(rho.grid == grid())) throw ShapeError("density lives on a different grid than the solver");
  for (double v : rho.values) {
    if (!std::isfinite(v)) throw DataError("non-finite value in Poisson source");
  }
  ops_.forward(rho.values, spectrum_);
  // k = 0 carries N * mean(rho); the source mean left after the background is
  // what the periodic problem cannot absorb.
  const double n = static_cast<double>(grid().size());
  const double mean = spectrum_[0].real() / n - background.value_or(0.0);
  if (removed_mean) *removed_mean = mean;

  simd::scale_complex({reinterpret_cast<double*>(spectrum_.data()), 2 * spectrum_.size()},
                      inv_k2_);
  ScalarField phi(grid());
  ops_.inverse(spectrum_, phi.values);
  return phi;
}

PoissonSolution PoissonSolver::solve(const ScalarField& rho, std::optional<double> background) {
  PoissonSolution sol;
  sol.phi = potential(rho, background, &sol.removed_mean);
  sol.electric = ops_.gradient(sol.phi);
  for (int a = 0; a < grid().dimension(); ++a) {
    for (double& v : sol.electric[a]) v = -v;
  }
  return sol;
}

PoissonSolution solve_poisson(const ScalarField& rho, std::optional<double> background) {
  PoissonSolver solver(rho.grid);
  return solver.solve(rho, background);
}

VectorField gradient_spectral(const ScalarField& phi) {
  SpectralOps ops(phi.grid);
  return ops.gradient(phi);
}

ScalarField density_from_reduced(const ReducedDistribution& q) {
  if (q.chart() != VelocityChart::w) {
    throw InvalidParameter("density_from_reduced expects the w-chart");
  }
  ScalarField rho(q.grid());
  const std::size_t n = q.slab_size();
  for (int j = 0; j < q.n_perp(); ++j) {
    for (int k = 0; k < q.n_par(); ++k) {
      const double weight = kTwoPi * q.perp_weight(j) * q.par_weight(k);
      if (weight == 0.0) continue;
      const auto s = q.slab(j, k);
      for (std::size_t i = 0; i < n; ++i) rho.values[i] += weight * s[i];
    }
  }
  return rho;
}

}  // namespace driftkin
