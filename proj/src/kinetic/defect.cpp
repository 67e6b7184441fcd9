#include "driftkin/kinetic/defect.hpp"

#include <cmath>

#include "driftkin/error.hpp"
#include "driftkin/gyro/gyro_coordinates.hpp"
#include "driftkin/poisson/poisson.hpp"
#include "driftkin/poisson/spectral.hpp"

namespace driftkin::kinetic {

DefectReport hilbert_defect(const ReducedDistribution& F, const gyro::GyroResolvedField& f1,
                            const ScalarField& phi_F, const fields::MagneticFieldModel& model,
                            double eps, const DefectInputs& in) {
  if (!(eps > 0.0)) throw InvalidParameter("epsilon must be positive");
  if (!F.same_shape(f1.shape())) throw ShapeError("F and f1 must share one grid");
  if (in.dF_dt && !F.same_shape(*in.dF_dt)) throw ShapeError("dF/dt must share the grid of F");
  if (in.df1_dt && (in.df1_dt->n_theta() != f1.n_theta() || !F.same_shape(in.df1_dt->shape()))) {
    throw ShapeError("df1/dt must share the grid of f1");
  }

  const ReducedDistribution P = f1.gyroaverage();
  ScalarField phi_P = in.phi_P ? *in.phi_P : solve_poisson(density_from_reduced(P)).phi;
  const ReducedDistribution zero = ReducedDistribution::zeros_like(F);
  const ReducedDistribution& dF_dt = in.dF_dt ? *in.dF_dt : zero;

  DefectReport report;
  report.parallel_residual = gyro::solvability_residual_parallel(F, phi_F).norm;
  if (report.parallel_residual > in.tolerance) {
    throw NotSolvable("parallel solvability condition violated", report.parallel_residual);
  }
  report.order0_residual =
      gyro::solvability_residual_order0(F, P, phi_F, phi_P, model, dF_dt).norm;
  if (report.order0_residual > in.tolerance) {
    throw NotSolvable("order-0 solvability condition violated", report.order0_residual);
  }

  const TorusGrid& grid = F.grid();
  const std::size_t nx = F.slab_size();
  SpectralOps ops(grid);
  std::vector<double> ex(nx), ey(nx), ez(nx, 0.0), b(nx);
  {
    const auto fx = ops.derivative(phi_F.values, 0);
    const auto fy = ops.derivative(phi_F.values, 1);
    const auto px = ops.derivative(phi_P.values, 0);
    const auto py = ops.derivative(phi_P.values, 1);
    const auto fz = gyro::stencil::d_parallel_position(phi_F);
    const auto pz = gyro::stencil::d_parallel_position(phi_P);
    for (std::size_t i = 0; i < nx; ++i) {
      ex[i] = -(fx[i] + eps * px[i]);
      ey[i] = -(fy[i] + eps * py[i]);
      ez[i] = -(fz[i] + eps * pz[i]);
      const Vec3 p = grid.node(i);
      b[i] = fields::eval_b(model, 0.0, {p.x, p.y});
    }
  }

  const int n_theta = f1.n_theta();
  // theta-derivative of f1 at every phase, node by node.
  std::vector<ReducedDistribution> dtheta_f1(n_theta, zero);
  {
    const gyro::GyrophaseDerivative D(n_theta);
    std::vector<double> column(n_theta), deriv(n_theta);
    const std::size_t total = F.values().size();
    for (std::size_t idx = 0; idx < total; ++idx) {
      for (int m = 0; m < n_theta; ++m) column[m] = f1.phase(m).values()[idx];
      D.apply(column, deriv);
      for (int m = 0; m < n_theta; ++m) dtheta_f1[m].values()[idx] = deriv[m];
    }
  }

  const double cell = grid.cell_volume();
  const double dtheta = kTwoPi / n_theta;
  double acc = 0.0;
  for (int m = 0; m < n_theta; ++m) {
    ReducedDistribution f = F;
    {
      auto& fv = f.values();
      const auto& g = f1.phase(m).values();
      for (std::size_t i = 0; i < fv.size(); ++i) fv[i] += eps * g[i];
    }
    const auto fx = gyro::stencil::d_x(f, 0);
    const auto fy = gyro::stencil::d_x(f, 1);
    const auto fz = gyro::stencil::d_x(f, 2);
    const auto fw = gyro::stencil::d_perp(f);
    const auto fv = gyro::stencil::d_par(f);
    const double theta = f1.theta(m);
    const Vec2 ew = gyro::e_w(theta);
    const Vec2 et = gyro::e_theta(theta);
    for (int j = 1; j < F.n_perp(); ++j) {
      const double w = F.perp(j);
      for (int k = 0; k < F.n_par(); ++k) {
        const double weight = F.perp_weight(j) * F.par_weight(k) * cell * dtheta;
        const double vpar = F.par(k);
        const auto sx = fx.slab(j, k), sy = fy.slab(j, k), sz = fz.slab(j, k);
        const auto sw = fw.slab(j, k), sv = fv.slab(j, k);
        const auto st = dtheta_f1[m].slab(j, k);
        const auto dt = dF_dt.slab(j, k);
        const auto dt1 = in.df1_dt ? in.df1_dt->phase(m).slab(j, k) : std::span<const double>{};
        for (std::size_t i = 0; i < nx; ++i) {
          const double ftheta = eps * st[i];
          const double time = eps * (dt[i] + (in.df1_dt ? eps * dt1[i] : 0.0));
          const double transport = w * (ew.x * sx[i] + ew.y * sy[i]) + vpar * sz[i];
          const double e_w = ex[i] * ew.x + ey[i] * ew.y;
          const double e_t = ex[i] * et.x + ey[i] * et.y;
          const double force = e_w * sw[i] + e_t * ftheta / w + ez[i] * sv[i];
          const double d = time + transport + force - (b[i] / eps) * ftheta;
          acc += weight * d * d;
        }
      }
    }
  }
  report.norm = std::sqrt(acc);
  return report;
}

VortexFamily steady_vortex_family(const gc::SteadyVortex& vortex, const VortexFamilyGrid& g) {
  const TorusGrid grid = TorusGrid::square(g.grid_n);
  VortexFamily family{ReducedDistribution(grid, g.n_w, g.w_max, g.n_par, g.par_max),
                      vortex.potential(grid)};
  const double norm = std::pow(kTwoPi, -1.5);
  family.F.fill([&](const Vec3& x, double w, double v) {
    return vortex.density_at({x.x, x.y}) * norm * std::exp(-0.5 * (w * w + v * v));
  });
  return family;
}

DefectReport vortex_family_defect(const VortexFamily& family, int n_theta, double eps) {
  const auto model = fields::MagneticFieldModel::uniform(1.0, 0.5);
  const ReducedDistribution P = ReducedDistribution::zeros_like(family.F);
  const gyro::GyroResolvedField f1 = gyro::construct_f1(family.F, family.phi, model, P, n_theta);
  const ScalarField phi_P(family.F.grid());
  DefectInputs in;
  in.phi_P = &phi_P;
  return hilbert_defect(family.F, f1, family.phi, model, eps, in);
}

}  // namespace driftkin::kinetic
