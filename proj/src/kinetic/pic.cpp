#include "driftkin/kinetic/pic.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "driftkin/diagnostics/invariants.hpp"
#include "driftkin/error.hpp"
#include "driftkin/kinetic/deposit.hpp"
#include "driftkin/kinetic/push.hpp"
#include "driftkin/poisson/field_io.hpp"
#include "driftkin/poisson/poisson.hpp"

namespace driftkin::kinetic {

namespace {

void solve_fields(PicState& st) {
  st.rho = deposit_charge(st.ensemble, st.grid, st.threads);
  if (!st.solver || !(st.solver->grid() == st.grid)) {
    st.solver = std::make_shared<PoissonSolver>(st.grid);
  }
  auto sol = st.solver->solve(st.rho, st.background);
  st.phi = std::move(sol.phi);
  st.electric = std::move(sol.electric);
}

double max_b_sampled(const fields::MagneticFieldModel& model, const TorusGrid& grid) {
  double m = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 p = grid.node(i);
    m = std::max(m, fields::eval_b(model, 0.0, {p.x, p.y}));
  }
  return m;
}

}  // namespace

PicState make_pic_state(ParticleEnsemble ensemble, const TorusGrid& grid,
                        const fields::MagneticFieldModel& field, double epsilon,
                        std::optional<double> background, int threads) {
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  PicState st;
  st.ensemble = std::move(ensemble);
  st.grid = grid;
  st.field = field;
  st.epsilon = epsilon;
  st.threads = std::max(1, threads);
  st.ensemble.wrap(grid);
  st.background = background.value_or(st.ensemble.total_weight() / grid.volume());
  solve_fields(st);
  return st;
}

void step_pic(PicState& st, double ds) {
  auto& ens = st.ensemble;
  const auto e = gather_field(st.electric, ens, st.threads);
  std::vector<double> b(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    b[i] = fields::eval_b(st.field, st.t(), {ens.x[i], ens.y[i]});
  }
  boris_push(ens, e[0], e[1], e[2], b, st.epsilon, ds, st.threads);
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (!std::isfinite(ens.x[i] + ens.y[i] + ens.z[i] + ens.vx[i] + ens.vy[i] + ens.vz[i])) {
      throw SolverFailure("non-finite particle state (particle " + std::to_string(i) +
                          ") at s = " + std::to_string(st.s + ds));
    }
  }
  ens.wrap(st.grid);
  st.s += ds;
  solve_fields(st);
}

Vec2 mean_guiding_center(const PicState& st) {
  const auto& ens = st.ensemble;
  double wx = 0.0, wy = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const Vec3 x = ens.unwrapped(i);
    const double b = fields::eval_b(st.field, st.t(), {ens.x[i], ens.y[i]});
    const double k = st.epsilon / b;
    wx += ens.weight[i] * (x.x + k * ens.vy[i]);
    wy += ens.weight[i] * (x.y - k * ens.vx[i]);
    wsum += ens.weight[i];
  }
  if (wsum == 0.0) return {};
  return {wx / wsum, wy / wsum};
}

diag::DiagnosticsRecord pic_record(const PicState& st, Vec2 gc0) {
  diag::DiagnosticsRecord r;
  r.t = st.t();
  r.s = st.s;
  r.set_energy(diag::energy_full(st.ensemble, st.electric));
  r.mass = st.rho.integral();
  if (st.t() > 0.0) r.drift_estimate = (1.0 / st.t()) * (mean_guiding_center(st) - gc0);
  return r;
}

void write_snapshot(const PicState& st, long step, const std::filesystem::path& dir) {
  const std::string tag = "snapshot_" + std::to_string(step);
  io::write_raw(st.rho, dir / (tag + "_rho"));
  io::write_raw(st.phi, dir / (tag + "_phi"));
  const auto& e = st.ensemble;
  const std::vector<const std::vector<double>*> arrays = {&e.x, &e.y, &e.z, &e.vx,
                                                          &e.vy, &e.vz, &e.weight};
  {
    std::ofstream bin(dir / (tag + "_particles.bin"), std::ios::binary);
    for (const auto* a : arrays) {
      bin.write(reinterpret_cast<const char*>(a->data()),
                static_cast<std::streamsize>(a->size() * sizeof(double)));
    }
  }
  nlohmann::json j;
  j["step"] = step;
  j["s"] = st.s;
  j["t"] = st.t();
  j["epsilon"] = st.epsilon;
  j["background"] = st.background;
  j["n_particles"] = e.size();
  j["rho"] = tag + "_rho.json";
  j["phi"] = tag + "_phi.json";
  j["particles"] = {{"data", tag + "_particles.bin"},
                    {"dtype", "float64-le"},
                    {"components", {"x", "y", "z", "vx", "vy", "vz", "weight"}},
                    {"count", e.size()}};
  std::ofstream(dir / (tag + ".json")) << j.dump(2) << '\n';
}

PicResult run_full_kinetic(const PicConfig& cfg) {
  if (cfg.steps < 0) throw InvalidParameter("steps must be nonnegative");
  if (cfg.output_every < 1) throw InvalidParameter("output_every must be >= 1");
  const double b_max = max_b_sampled(cfg.field, cfg.grid);
  const double ds = cfg.ds > 0.0 ? cfg.ds
                                 : gyroperiod_step(cfg.epsilon, b_max, cfg.steps_per_period);
  check_rotation_bound(ds, b_max, cfg.epsilon);

  auto ens = sample_initial(cfg.initial, cfg.grid, cfg.n_particles, cfg.seed);
  PicState st = make_pic_state(std::move(ens), cfg.grid, cfg.field, cfg.epsilon, cfg.background,
                               cfg.threads);
  const Vec2 gc0 = mean_guiding_center(st);

  PicResult result;
  result.ds = ds;
  std::unique_ptr<diag::CsvWriter> csv;
  const bool files = !cfg.out_dir.empty();
  if (files) {
    std::filesystem::create_directories(cfg.out_dir);
    csv = std::make_unique<diag::CsvWriter>(cfg.out_dir / "diagnostics.csv");
  }
  auto record = [&]() {
    result.records.push_back(pic_record(st, gc0));
    if (csv) csv->write(result.records.back());
  };
  record();
  if (files && cfg.snapshot_every > 0) write_snapshot(st, 0, cfg.out_dir);
  for (long n = 1; n <= cfg.steps; ++n) {
    try {
      step_pic(st, ds);
    } catch (const SolverFailure& err) {
      if (csv) csv->flush();
      if (files) {
        nlohmann::json j{{"error", err.what()}, {"step", n}, {"s", st.s}, {"t", st.t()}};
        std::ofstream(cfg.out_dir / "error.json") << j.dump(2) << '\n';
      }
      throw;
    }
    if (n % cfg.output_every == 0 || n == cfg.steps) record();
    if (files && cfg.snapshot_every > 0 && n % cfg.snapshot_every == 0) {
      write_snapshot(st, n, cfg.out_dir);
    }
  }
  result.final_state = std::move(st);
  return result;
}

}  // namespace driftkin::kinetic
