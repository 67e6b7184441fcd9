#include "driftkin/gyro/hierarchy.hpp"

#include <cmath>

#include "driftkin/error.hpp"
#include "driftkin/guiding_center/drift.hpp"
#include "driftkin/gyro/gyro_coordinates.hpp"
#include "driftkin/poisson/spectral.hpp"

namespace driftkin::gyro {

GyroResolvedField::GyroResolvedField(const ReducedDistribution& shape, int n_theta) {
  if (n_theta < 4 || n_theta % 2 != 0) {
    throw InvalidParameter("gyrophase resolution must be even and >= 4");
  }
  phases_.assign(n_theta, ReducedDistribution::zeros_like(shape));
}

ReducedDistribution GyroResolvedField::gyroaverage() const {
  ReducedDistribution avg = ReducedDistribution::zeros_like(shape());
  auto& out = avg.values();
  for (const auto& p : phases_) {
    const auto& v = p.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
  }
  const double inv = 1.0 / n_theta();
  for (double& v : out) v *= inv;
  return avg;
}

namespace stencil {

ReducedDistribution d_x(const ReducedDistribution& f, int axis) {
  ReducedDistribution out = ReducedDistribution::zeros_like(f);
  if (axis >= f.grid().dimension()) return out;
  SpectralOps ops(f.grid());
  for (int j = 0; j < f.n_perp(); ++j) {
    for (int k = 0; k < f.n_par(); ++k) ops.derivative(f.slab(j, k), axis, out.slab(j, k));
  }
  return out;
}

namespace {

// Second-order derivative along one velocity axis. `at(i)` selects the slab
// of node i on that axis.
template <typename SlabOf, typename OutSlabOf>
void velocity_derivative(int n, double h, std::size_t len, SlabOf in, OutSlabOf out) {
  const double inv2h = 1.0 / (2.0 * h);
  for (int i = 0; i < n; ++i) {
    auto o = out(i);
    if (i == 0) {
      auto a = in(0), b = in(1), c = in(2);
      for (std::size_t x = 0; x < len; ++x) o[x] = (-3.0 * a[x] + 4.0 * b[x] - c[x]) * inv2h;
    } else if (i == n - 1) {
      auto a = in(n - 1), b = in(n - 2), c = in(n - 3);
      for (std::size_t x = 0; x < len; ++x) o[x] = (3.0 * a[x] - 4.0 * b[x] + c[x]) * inv2h;
    } else {
      auto lo = in(i - 1), hi = in(i + 1);
      for (std::size_t x = 0; x < len; ++x) o[x] = (hi[x] - lo[x]) * inv2h;
    }
  }
}

}  // namespace

ReducedDistribution d_perp(const ReducedDistribution& f) {
  ReducedDistribution out = ReducedDistribution::zeros_like(f);
  for (int k = 0; k < f.n_par(); ++k) {
    velocity_derivative(
        f.n_perp(), f.d_perp(), f.slab_size(), [&](int j) { return f.slab(j, k); },
        [&](int j) { return out.slab(j, k); });
  }
  return out;
}

ReducedDistribution d_par(const ReducedDistribution& f) {
  ReducedDistribution out = ReducedDistribution::zeros_like(f);
  for (int j = 0; j < f.n_perp(); ++j) {
    velocity_derivative(
        f.n_par(), f.d_par(), f.slab_size(), [&](int k) { return f.slab(j, k); },
        [&](int k) { return out.slab(j, k); });
  }
  return out;
}

std::vector<double> d_parallel_position(const ScalarField& phi) {
  if (phi.grid.dimension() < 3) return std::vector<double>(phi.size(), 0.0);
  SpectralOps ops(phi.grid);
  return ops.derivative(phi.values, 2);
}

double l2_norm(const ReducedDistribution& f) {
  const double cell = f.grid().cell_volume();
  double acc = 0.0;
  for (int j = 0; j < f.n_perp(); ++j) {
    const double wj = f.perp_weight(j);
    if (wj == 0.0) continue;
    for (int k = 0; k < f.n_par(); ++k) {
      const double weight = wj * f.par_weight(k) * cell;
      double s2 = 0.0;
      for (double v : f.slab(j, k)) s2 += v * v;
      acc += weight * s2;
    }
  }
  return std::sqrt(acc);
}

}  // namespace stencil

namespace {

void require_compatible(const ReducedDistribution& F, const ScalarField& phi) {
  if (!(F.grid() == phi.grid)) {
    throw ShapeError("distribution and potential live on different position grids");
  }
  if (F.chart() != VelocityChart::w) throw InvalidParameter("hierarchy operators use the w-chart");
}

}  // namespace

GVector vector_G(const ReducedDistribution& F, const ScalarField& phi_F) {
  require_compatible(F, phi_F);
  SpectralOps ops(phi_F.grid);
  const auto dphi_x = ops.derivative(phi_F.values, 0);
  const auto dphi_y = ops.derivative(phi_F.values, 1);
  GVector g{stencil::d_x(F, 0), stencil::d_x(F, 1)};
  const ReducedDistribution dFdw = stencil::d_perp(F);
  const std::size_t n = F.slab_size();
  for (int j = 0; j < F.n_perp(); ++j) {
    const double w = F.perp(j);
    for (int k = 0; k < F.n_par(); ++k) {
      auto gx = g.x.slab(j, k);
      auto gy = g.y.slab(j, k);
      const auto fw = dFdw.slab(j, k);
      for (std::size_t i = 0; i < n; ++i) {
        gx[i] = w * gx[i] - dphi_x[i] * fw[i];
        gy[i] = w * gy[i] - dphi_y[i] * fw[i];
      }
    }
  }
  return g;
}

Residual solvability_residual_parallel(const ReducedDistribution& F, const ScalarField& phi_F) {
  require_compatible(F, phi_F);
  Residual r{stencil::d_x(F, 2), 0.0};
  const ReducedDistribution dFdv = stencil::d_par(F);
  const auto dphi_par = stencil::d_parallel_position(phi_F);
  const std::size_t n = F.slab_size();
  for (int j = 0; j < F.n_perp(); ++j) {
    for (int k = 0; k < F.n_par(); ++k) {
      const double v = F.par(k);
      auto out = r.field.slab(j, k);
      const auto fv = dFdv.slab(j, k);
      for (std::size_t i = 0; i < n; ++i) out[i] = v * out[i] - dphi_par[i] * fv[i];
    }
  }
  r.norm = stencil::l2_norm(r.field);
  return r;
}

GyroResolvedField construct_f1(const ReducedDistribution& F, const ScalarField& phi_F,
                               const fields::MagneticFieldModel& model,
                               const ReducedDistribution& P, int n_theta, double tolerance) {
  if (!F.same_shape(P)) throw ShapeError("F and P must share one grid");
  const Residual parallel = solvability_residual_parallel(F, phi_F);
  if (parallel.norm > tolerance) {
    throw NotSolvable("parallel solvability condition violated", parallel.norm);
  }
  const GVector g = vector_G(F, phi_F);
  GyroResolvedField f1(F, n_theta);
  const TorusGrid& grid = F.grid();
  const std::size_t n = F.slab_size();
  std::vector<double> inv_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 p = grid.node(i);
    inv_b[i] = 1.0 / fields::eval_b(model, 0.0, {p.x, p.y});
  }
  for (int m = 0; m < n_theta; ++m) {
    const Vec2 et = e_theta(f1.theta(m));
    auto& out = f1.phase(m).values();
    const auto& gx = g.x.values();
    const auto& gy = g.y.values();
    const auto& pv = P.values();
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      out[idx] = -inv_b[idx % n] * (et.x * gx[idx] + et.y * gy[idx]) + pv[idx];
    }
  }
  return f1;
}

Residual solvability_residual_order0(const ReducedDistribution& F, const ReducedDistribution& P,
                                     const ScalarField& phi_F, const ScalarField& phi_P,
                                     const fields::MagneticFieldModel& model,
                                     const ReducedDistribution& dF_dt) {
  require_compatible(F, phi_F);
  if (!F.same_shape(P) || !F.same_shape(dF_dt)) throw ShapeError("F, P, dF/dt must share one grid");
  if (!(phi_P.grid == phi_F.grid)) throw ShapeError("phi_F and phi_P must share one grid");

  const TorusGrid& grid = F.grid();
  SpectralOps ops(grid);
  const auto dphi_x = ops.derivative(phi_F.values, 0);
  const auto dphi_y = ops.derivative(phi_F.values, 1);
  const auto dphiF_par = stencil::d_parallel_position(phi_F);
  const auto dphiP_par = stencil::d_parallel_position(phi_P);
  const ReducedDistribution Fx = stencil::d_x(F, 0);
  const ReducedDistribution Fy = stencil::d_x(F, 1);
  const ReducedDistribution Fw = stencil::d_perp(F);
  const ReducedDistribution Fv = stencil::d_par(F);
  const ReducedDistribution Pz = stencil::d_x(P, 2);
  const ReducedDistribution Pv = stencil::d_par(P);

  const std::size_t n = F.slab_size();
  std::vector<double> b(n);
  std::vector<Vec2> gb(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 p = grid.node(i);
    b[i] = fields::eval_b(model, 0.0, {p.x, p.y});
    gb[i] = fields::grad_b(model, 0.0, {p.x, p.y});
  }

  Residual r{ReducedDistribution::zeros_like(F), 0.0};
  for (int j = 0; j < F.n_perp(); ++j) {
    const double w = F.perp(j);
    for (int k = 0; k < F.n_par(); ++k) {
      const double v = F.par(k);
      auto out = r.field.slab(j, k);
      const auto dt = dF_dt.slab(j, k);
      const auto fx = Fx.slab(j, k), fy = Fy.slab(j, k), fw = Fw.slab(j, k), fv = Fv.slab(j, k);
      const auto pz = Pz.slab(j, k), pv = Pv.slab(j, k);
      for (std::size_t i = 0; i < n; ++i) {
        const auto u = gc::drift_velocity(w, {dphi_x[i], dphi_y[i]}, b[i], gb[i]);
        out[i] = dt[i] + u.u_perp.x * fx[i] + u.u_perp.y * fy[i] + u.u_w * fw[i] -
                 dphiP_par[i] * fv[i] + v * pz[i] - dphiF_par[i] * pv[i];
      }
    }
  }
  r.norm = stencil::l2_norm(r.field);
  return r;
}

ReducedDistribution centered_time_derivative(const ReducedDistribution& before,
                                             const ReducedDistribution& after, double dt) {
  if (!before.same_shape(after)) throw ShapeError("snapshots must share one grid");
  ReducedDistribution out = ReducedDistribution::zeros_like(before);
  const double inv = 1.0 / (2.0 * dt);
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    out.values()[i] = (after.values()[i] - before.values()[i]) * inv;
  }
  return out;
}

}  // namespace driftkin::gyro
