#include "driftkin/guiding_center/gc2d.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "driftkin/error.hpp"
#include "driftkin/guiding_center/interpolation.hpp"
#include "driftkin/poisson/field_io.hpp"
#include "driftkin/poisson/poisson.hpp"
#include "driftkin/simd/kernels.hpp"

namespace driftkin::gc {

namespace {

double periodic_cubic(const std::vector<double>& v, double h, double x) {
  const int n = static_cast<int>(v.size());
  const double s = x / h;
  const double f = std::floor(s);
  const auto w = cubic_weights(s - f);
  const int i = static_cast<int>(f);
  double acc = 0.0;
  for (int c = 0; c < 4; ++c) {
    int m = (i - 1 + c) % n;
    if (m < 0) m += n;
    acc += w[c] * v[m];
  }
  return acc;
}

// Primitive of the cell averages, known at the edges (m + 1/2) h and
// continued periodically with offset `mass` per period.
double primitive_at(const std::vector<double>& edges, double mass, double h, double x) {
  const int n = static_cast<int>(edges.size());
  const double s = x / h - 0.5;
  const double f = std::floor(s);
  const auto w = cubic_weights(s - f);
  const int m0 = static_cast<int>(f);
  double acc = 0.0;
  for (int c = 0; c < 4; ++c) {
    const int m = m0 - 1 + c;
    int q = m / n;
    if (m % n < 0) --q;
    acc += w[c] * (edges[m - q * n] + q * mass);
  }
  return acc;
}

struct LineScratch {
  std::vector<double> u, g, edges, feet;
  explicit LineScratch(int n) : u(n), g(n), edges(n), feet(n) {}
};

// One conservative sweep of dg/dt + d(u g)/dx = 0 on a periodic line.
void sweep_line(LineScratch& s, double h, double tau) {
  const int n = static_cast<int>(s.g.size());
  const double length = n * h;
  for (int m = 0; m < n; ++m) {
    const double x = (m + 0.5) * h;
    const double k1 = periodic_cubic(s.u, h, x);
    const double k2 = periodic_cubic(s.u, h, x - 0.5 * tau * k1);
    const double k3 = periodic_cubic(s.u, h, x - 0.5 * tau * k2);
    const double k4 = periodic_cubic(s.u, h, x - tau * k3);
    s.feet[m] = x - (tau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  double acc = 0.0;
  for (int m = 0; m < n; ++m) {
    acc += h * s.g[m];
    s.edges[m] = acc;
  }
  const double mass = acc;
  double left = primitive_at(s.edges, mass, h, s.feet[n - 1] - length);
  for (int i = 0; i < n; ++i) {
    const double right = primitive_at(s.edges, mass, h, s.feet[i]);
    s.g[i] = (right - left) / h;
    left = right;
  }
}

void sweep(std::vector<double>& g, const std::vector<double>& u, const TorusGrid& grid, int axis,
           double tau) {
  const int nx = grid.count(0);
  const int ny = grid.count(1);
  const int n = axis == 0 ? nx : ny;
  const int lines = axis == 0 ? ny : nx;
  const double h = grid.spacing(axis);
  LineScratch s(n);
  for (int line = 0; line < lines; ++line) {
    auto flat = [&](int i) {
      return axis == 0 ? static_cast<std::size_t>(i) * ny + line
                       : static_cast<std::size_t>(line) * ny + i;
    };
    for (int i = 0; i < n; ++i) {
      s.g[i] = g[flat(i)];
      s.u[i] = u[flat(i)];
    }
    sweep_line(s, h, tau);
    for (int i = 0; i < n; ++i) g[flat(i)] = s.g[i];
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double field_energy_integral(const ScalarField& phi) {
  return gradient_spectral(phi).squared_norm_integral();
}

diag::EnergyParts reduced_energy_density(const Gc2dState& state, double kinetic_coefficient) {
  return diag::make_energy(kinetic_coefficient * state.density.integral(),
                           field_energy_integral(state.phi) / (4.0 * kPi));
}

diag::DiagnosticsRecord gc2d_record(const Gc2dState& state) {
  diag::DiagnosticsRecord r;
  r.t = state.t;
  r.set_energy(reduced_energy_density(state));
  const auto& g = state.density;
  const double cell = g.grid.cell_volume();
  double l1 = 0.0, l2 = 0.0, linf = 0.0, mn = g.values.empty() ? 0.0 : g.values.front();
  for (double v : g.values) {
    l1 += std::abs(v);
    l2 += v * v;
    linf = std::max(linf, std::abs(v));
    mn = std::min(mn, v);
  }
  r.mass = simd::sum(g.values) * cell;
  r.l1 = l1 * cell;
  r.l2 = std::sqrt(l2 * cell);
  r.linf = linf;
  r.min_value = mn;
  return r;
}

namespace {

const TorusGrid& planar(const ScalarField& f) {
  if (f.grid.dimension() != 2) throw ShapeError("gc2d runs on a 2D torus grid");
  return f.grid;
}

}  // namespace

Gc2dSolver::Gc2dSolver(const ScalarField& initial, double background)
    : poisson_(planar(initial)) {
  state_.density = initial;
  state_.background = background;
  update_potential();
}

void Gc2dSolver::velocity(const ScalarField& phi, std::vector<double>& ux,
                          std::vector<double>& uy) {
  const VectorField grad = poisson_.ops().gradient(phi);
  ux.resize(phi.size());
  uy.resize(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    ux[i] = -grad[1][i];
    uy[i] = grad[0][i];
  }
}

void Gc2dSolver::update_potential() {
  for (double v : state_.density.values) {
    if (!std::isfinite(v)) throw SolverFailure("non-finite density at t = " + std::to_string(state_.t));
  }
  state_.phi = poisson_.potential(state_.density, state_.background);
  velocity(state_.phi, ux_, uy_);
}

void Gc2dSolver::strang_step(std::vector<double>& g, double dt, const std::vector<double>& ux,
                             const std::vector<double>& uy) const {
  const TorusGrid& grid = state_.density.grid;
  sweep(g, ux, grid, 0, 0.5 * dt);
  sweep(g, uy, grid, 1, dt);
  sweep(g, ux, grid, 0, 0.5 * dt);
}

void Gc2dSolver::advance(double dt) {
  std::vector<double> hx(ux_.size()), hy(uy_.size());
  if (!has_prev_) {
    std::vector<double> g = state_.density.values;
    strang_step(g, dt, ux_, uy_);
    ScalarField predicted(state_.density.grid);
    predicted.values = std::move(g);
    const ScalarField phi = poisson_.potential(predicted, state_.background);
    std::vector<double> px, py;
    velocity(phi, px, py);
    for (std::size_t i = 0; i < hx.size(); ++i) {
      hx[i] = 0.5 * (ux_[i] + px[i]);
      hy[i] = 0.5 * (uy_[i] + py[i]);
    }
  } else {
    const double c = 0.5 * dt / dt_prev_;
    for (std::size_t i = 0; i < hx.size(); ++i) {
      hx[i] = ux_[i] + c * (ux_[i] - ux_prev_[i]);
      hy[i] = uy_[i] + c * (uy_[i] - uy_prev_[i]);
    }
  }
  strang_step(state_.density.values, dt, hx, hy);
  ux_prev_ = ux_;
  uy_prev_ = uy_;
  dt_prev_ = dt;
  has_prev_ = true;
  state_.t += dt;
  update_potential();
}

int Gc2dSolver::step(double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("gc2d step needs dt > 0");
  const TorusGrid& grid = state_.density.grid;
  const double h = std::min(grid.spacing(0), grid.spacing(1));
  const double cells = std::max(max_abs(ux_), max_abs(uy_)) * dt / h;
  const int substeps = std::max(1, static_cast<int>(std::ceil(cells / 2.0)));
  for (int k = 0; k < substeps; ++k) advance(dt / substeps);
  return substeps;
}

Gc2dResult run_guiding_center_2d(const Gc2dConfig& config) {
  if (!(config.dt > 0.0)) throw InvalidParameter("gc2d: dt must be positive");
  if (!(config.t_end >= 0.0)) throw InvalidParameter("gc2d: T must be nonnegative");
  if (config.output_every < 1) throw InvalidParameter("gc2d: output_every must be >= 1");
  const double background = config.background.value_or(config.initial.mean());
  Gc2dSolver solver(config.initial, background);
  Gc2dResult result;

  std::unique_ptr<diag::CsvWriter> csv;
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    csv = std::make_unique<diag::CsvWriter>(config.out_dir / "gc2d_diag.csv");
  }
  auto record = [&]() {
    const auto r = gc2d_record(solver.state());
    result.records.push_back(r);
    result.field_energy_integral.push_back(field_energy_integral(solver.state().phi));
    if (csv) csv->write(r);
  };

  const long steps = std::lround(config.t_end / config.dt);
  record();
  if (config.observer) config.observer({0, 0.0, &solver.state()});
  int last_split = 1;
  try {
    for (long n = 1; n <= steps; ++n) {
      const int k = solver.step(config.dt);
      result.max_substeps = std::max(result.max_substeps, k);
      if (k != last_split) {
        std::cerr << "gc2d: step " << n << " split into " << k
                  << " substeps to keep the foot displacement within 2 cells\n";
        last_split = k;
      }
      result.steps = static_cast<int>(n);
      if (config.observer) config.observer({static_cast<int>(n), solver.state().t, &solver.state()});
      if (n % config.output_every == 0 || n == steps) record();
      if (config.verbose && n % config.output_every == 0) {
        std::cout << "gc2d: t = " << solver.state().t << '\n';
      }
    }
  } catch (const SolverFailure&) {
    if (csv) csv->flush();
    throw;
  }
  result.final_state = solver.state();
  if (!config.out_dir.empty()) {
    io::write_raw(result.final_state.density, config.out_dir / "gc2d_density_final");
    io::write_raw(result.final_state.phi, config.out_dir / "gc2d_phi_final");
  }
  return result;
}

ScalarField kelvin_helmholtz(int n, double amplitude, double perturbation, double mode) {
  const TorusGrid grid(2, {2.0 * kTwoPi, kTwoPi, 1.0}, {n, n, 1});
  return ScalarField::sample(grid, [&](const Vec3& p) {
    return 1.0 + amplitude * (std::sin(p.y) + perturbation * std::cos(mode * p.x));
  });
}

double SteadyVortex::potential_at(Vec2 x) const {
  return amplitude * std::sin(mode.x * x.x) * std::sin(mode.y * x.y);
}

double SteadyVortex::density_at(Vec2 x) const {
  return rho0 + (mode.x * mode.x + mode.y * mode.y) * potential_at(x);
}

Vec2 SteadyVortex::potential_gradient_at(Vec2 x) const {
  return {amplitude * mode.x * std::cos(mode.x * x.x) * std::sin(mode.y * x.y),
          amplitude * mode.y * std::sin(mode.x * x.x) * std::cos(mode.y * x.y)};
}

ScalarField SteadyVortex::potential(const TorusGrid& grid) const {
  return ScalarField::sample(grid, [&](const Vec3& p) { return potential_at({p.x, p.y}); });
}

ScalarField SteadyVortex::density(const TorusGrid& grid) const {
  return ScalarField::sample(grid, [&](const Vec3& p) { return density_at({p.x, p.y}); });
}

}  // namespace driftkin::gc
