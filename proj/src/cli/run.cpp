#include "driftkin/cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>

#include "driftkin/diagnostics/invariants.hpp"
#include "driftkin/diagnostics/record.hpp"
#include "driftkin/error.hpp"
#include "driftkin/guiding_center/gc2d.hpp"
#include "driftkin/guiding_center/orbit.hpp"
#include "driftkin/kinetic/defect.hpp"
#include "driftkin/kinetic/drift_study.hpp"
#include "driftkin/kinetic/pic.hpp"
#include "driftkin/kinetic/push.hpp"
#include "driftkin/parallel.hpp"

namespace driftkin::cli {

namespace fs = std::filesystem;
using config::Scenario;
using config::ScenarioConfig;

namespace {

std::string sci(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

ScenarioOutcome run_drift(const ScenarioConfig& c, kinetic::DriftKind kind, std::ostream& log) {
  const double eps0 = c.epsilon.value;
  const double length = c.domain.length;
  std::ofstream csv(fs::path(c.out) / "drift.csv");
  csv << "epsilon,steps_per_period,measured_x,measured_y,predicted_x,predicted_y,relative_error\n";
  log << "epsilon  N  measured  predicted  rel.error\n";
  std::vector<double> errors;
  for (double eps : {eps0, eps0 / 2, eps0 / 4}) {
    kinetic::DriftStudyConfig d;
    d.kind = kind;
    d.epsilon = eps;
    d.b0 = c.field.b0;
    d.alpha = c.field.alpha;
    d.e0 = c.orbit.e0;
    d.gradient = c.field.grad;
    d.w = c.orbit.w;
    d.x0 = {0.5 * length, 0.5 * length};
    d.steps_per_period = kinetic::corefined_steps_per_period(c.orbit.steps_per_period, eps0, eps);
    d.n_periods = c.orbit.n_periods;
    const auto r = kinetic::run_drift_study(d);
    using diag::format_double;
    csv << format_double(eps) << ',' << d.steps_per_period << ',' << format_double(r.measured.x)
        << ',' << format_double(r.measured.y) << ',' << format_double(r.predicted.x) << ','
        << format_double(r.predicted.y) << ',' << format_double(r.relative_error) << '\n';
    log << sci(eps, 3) << "  " << d.steps_per_period << "  (" << sci(r.measured.x, 5) << ", "
        << sci(r.measured.y, 5) << ")  (" << sci(r.predicted.x, 5) << ", " << sci(r.predicted.y, 5)
        << ")  " << sci(r.relative_error) << '\n';
    errors.push_back(r.relative_error);
  }
  const bool monotone = errors[1] < errors[0] && errors[2] < errors[1];
  ScenarioOutcome out;
  out.has_verdict = true;
  out.pass = errors[0] <= c.thresholds.drift_rel && monotone;
  out.summary = std::string(kind == kinetic::DriftKind::exb ? "exb" : "gradb") + " drift error " +
                sci(errors[0]) + (monotone ? " decreasing " : " not decreasing ") +
                verdict(out.pass);
  return out;
}

ScenarioOutcome run_mu(const ScenarioConfig& c, std::ostream& log) {
  const auto model = make_field(c.field, c.domain.length);
  const PotentialModel phi = c.orbit.potential == config::FrozenPotential::zero
                                 ? PotentialModel::zero()
                                 : PotentialModel::cellular(c.orbit.potential_amplitude, {1.0, 1.0});
  double worst = 0.0;
  for (std::size_t i = 0; i < c.orbit.states.size(); ++i) {
    const auto& s = c.orbit.states[i];
    const auto orbit = gc::integrate_drift_orbit({s.x, 0.0, s.w, 0.0}, phi, model, c.orbit.t_end,
                                                 c.orbit.dt);
    gc::write_orbit_csv(orbit, fs::path(c.out) / ("orbit_" + std::to_string(i) + ".csv"));
    const double drift = gc::relative_mu_drift(orbit);
    log << "orbit " << i << " mu drift " << sci(drift) << '\n';
    worst = std::max(worst, drift);
  }
  ScenarioOutcome out;
  out.has_verdict = true;
  out.pass = worst <= c.thresholds.mu_drift;
  out.summary = "mu drift " + sci(worst, 1) + " " + verdict(out.pass);
  return out;
}

double max_relative_change(const std::vector<diag::DiagnosticsRecord>& records,
                           double diag::DiagnosticsRecord::*member) {
  const double ref = records.front().*member;
  double worst = 0.0;
  for (const auto& r : records) worst = std::max(worst, std::abs(r.*member - ref) / std::abs(ref));
  return worst;
}

ScenarioOutcome run_gc2d(const ScenarioConfig& c, std::ostream& log) {
  gc::Gc2dConfig g;
  g.initial = gc::kelvin_helmholtz(c.gc2d.n, c.gc2d.amplitude, c.gc2d.perturbation, c.gc2d.mode);
  g.dt = c.gc2d.dt;
  g.t_end = c.gc2d.t_end;
  g.output_every = c.gc2d.output_every;
  g.out_dir = c.out;
  g.verbose = true;
  const auto result = gc::run_guiding_center_2d(g);
  const double energy = max_relative_change(result.records, &diag::DiagnosticsRecord::total_energy);
  const double mass = max_relative_change(result.records, &diag::DiagnosticsRecord::mass);
  log << "steps " << result.steps << ", max substeps " << result.max_substeps << '\n';
  ScenarioOutcome out;
  out.has_verdict = true;
  out.pass = energy <= c.thresholds.energy_drift && mass <= c.thresholds.mass;
  out.summary = "energy drift " + sci(energy) + " mass drift " + sci(mass) + " " + verdict(out.pass);
  return out;
}

ScenarioOutcome run_pic(const ScenarioConfig& c, std::ostream& log) {
  kinetic::PicConfig p;
  p.grid = TorusGrid::square(c.domain.n, c.domain.length);
  p.field = make_field(c.field, c.domain.length);
  p.epsilon = c.epsilon.value;
  const gc::SteadyVortex vortex{c.pic.vortex_amplitude, {1.0, 1.0}, 1.0};
  p.initial.velocity = kinetic::VelocityProfile::maxwellian;
  p.initial.thermal_speed = c.pic.thermal_speed;
  p.initial.density = [vortex](const Vec3& x) { return vortex.density_at({x.x, x.y}); };
  p.n_particles = static_cast<std::size_t>(c.pic.particles);
  p.seed = c.seed;
  p.steps_per_period = c.pic.steps_per_period;
  double ds = c.pic.ds;
  if (ds == 0.0) {
    fields::SampleLattice lattice;
    lattice.upper = {c.domain.length, c.domain.length};
    const double b_max = fields::validate_field(p.field, lattice).max_b;
    ds = kinetic::gyroperiod_step(p.epsilon, b_max, p.steps_per_period);
  }
  p.ds = ds;
  p.steps = std::max(1L, std::lround(c.pic.t_end / (p.epsilon * ds)));
  p.output_every = c.pic.output_every;
  p.snapshot_every = c.pic.snapshot_every;
  p.threads = c.threads;
  p.out_dir = c.out;
  log << "pic: " << p.n_particles << " particles, " << p.steps << " steps of ds " << sci(ds, 4)
      << '\n';
  const auto result = kinetic::run_full_kinetic(p);
  const double energy = max_relative_change(result.records, &diag::DiagnosticsRecord::total_energy);
  ScenarioOutcome out;
  out.has_verdict = true;
  out.pass = energy <= c.thresholds.energy_drift;
  out.summary = "energy drift " + sci(energy) + " " + verdict(out.pass);
  return out;
}

bool ratios_within(const diag::ConvergenceTable& t, double lo, double hi, std::string& text) {
  bool ok = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    const double r = t.rows[i].ratio;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r);
    text += (i > 1 ? " " : "") + std::string(buf);
    ok = ok && r >= lo && r <= hi;
  }
  for (const auto& row : t.rows) ok = ok && !row.failed;
  return ok;
}

void log_table(const diag::ConvergenceTable& t, std::ostream& log) {
  log << "epsilon  error  ratio\n";
  for (const auto& row : t.rows) {
    log << sci(row.epsilon, 3) << "  " << (row.failed ? "failed: " + row.failure : sci(row.error, 4))
        << "  " << (std::isnan(row.ratio) ? std::string("-") : sci(row.ratio, 3)) << '\n';
  }
  log << "fitted order " << t.fitted_order << '\n';
}

ScenarioOutcome run_defect(const ScenarioConfig& c, std::ostream& log) {
  kinetic::VortexFamilyGrid g;
  g.grid_n = c.defect.n;
  g.n_w = c.defect.n_w;
  g.w_max = c.defect.w_max;
  g.n_par = c.defect.n_par;
  g.par_max = c.defect.par_max;
  g.n_theta = c.defect.n_theta;
  const gc::SteadyVortex vortex{c.defect.vortex_amplitude, {1.0, 1.0}, 1.0};
  const auto family = kinetic::steady_vortex_family(vortex, g);
  const auto table = diag::convergence_study(
      [&](double eps) { return kinetic::vortex_family_defect(family, g.n_theta, eps).norm; },
      c.epsilon.list);
  diag::write_convergence_json(table, fs::path(c.out) / "convergence.json");
  log_table(table, log);
  std::string ratios;
  ScenarioOutcome out;
  out.has_verdict = true;
  out.pass = ratios_within(table, c.thresholds.defect_ratio_min, c.thresholds.defect_ratio_max, ratios);
  out.summary = "defect ratios " + ratios + " " + verdict(out.pass);
  return out;
}

ScenarioOutcome run_convergence(const ScenarioConfig& c, std::ostream& log) {
  kinetic::ReducedComparisonConfig rc;
  rc.grid_n = c.domain.n;
  rc.vortex = {c.convergence.vortex_amplitude, {1.0, 1.0}, 1.0};
  rc.ring_speed = c.convergence.ring_speed;
  rc.n_particles = static_cast<std::size_t>(c.convergence.particles);
  rc.seed = c.seed;
  rc.t_end = c.convergence.t_end;
  rc.steps_per_period_ref = c.convergence.steps_per_period;
  rc.eps_ref = c.epsilon.list.front();
  rc.orbit_dt = c.convergence.orbit_dt;
  rc.threads = 1;

  const auto& eps_list = c.epsilon.list;
  const std::size_t n = eps_list.size();
  std::vector<kinetic::ReducedComparison> results(n);
  std::vector<std::string> failures(n);
  parallel_chunks(n, static_cast<int>(n), c.threads, [&](int, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        results[i] = kinetic::compare_pic_with_drift_orbits(rc, eps_list[i]);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  });
  auto index_of = [&](double eps) {
    for (std::size_t i = 0; i < n; ++i) {
      if (eps_list[i] == eps) return i;
    }
    throw InvalidParameter("epsilon not in list");
  };
  const auto table = diag::convergence_study(
      [&](double eps) {
        const std::size_t i = index_of(eps);
        if (!failures[i].empty()) throw SolverFailure(failures[i]);
        return results[i].marker_error;
      },
      eps_list);
  diag::write_convergence_json(table, fs::path(c.out) / "convergence.json");
  {
    std::ofstream csv(fs::path(c.out) / "comparison.csv");
    csv << "epsilon,steps_per_period,steps,marker_error,gc_error,displacement\n";
    for (std::size_t i = 0; i < n; ++i) {
      using diag::format_double;
      csv << format_double(eps_list[i]) << ',' << results[i].steps_per_period << ','
          << results[i].steps << ',' << format_double(results[i].marker_error) << ','
          << format_double(results[i].gc_error) << ',' << format_double(results[i].displacement)
          << '\n';
    }
  }
  log_table(table, log);
  std::string ratios;
  ScenarioOutcome out;
  out.has_verdict = true;
  out.pass = ratios_within(table, c.thresholds.convergence_ratio_min,
                           c.thresholds.convergence_ratio_max, ratios);
  out.summary = "displacement error ratios " + ratios + " " + verdict(out.pass);
  return out;
}

}  // namespace

fields::MagneticFieldModel make_field(const config::FieldSpec& spec, double length) {
  switch (spec.variant) {
    case fields::FieldVariant::uniform:
      return fields::MagneticFieldModel::uniform(spec.b0, spec.alpha);
    case fields::FieldVariant::linear_ramp:
      return fields::MagneticFieldModel::linear_ramp(spec.b0, spec.grad, spec.alpha);
    case fields::FieldVariant::periodic_bump:
      return fields::MagneticFieldModel::periodic_bump(spec.b0, spec.amplitude,
                                                        {0.5 * length, 0.5 * length},
                                                        {length, length}, spec.alpha);
  }
  throw InvalidParameter("unknown field variant");
}

ScenarioOutcome run_scenario(const ScenarioConfig& c, std::ostream& log) {
  if (const auto errors = config::validate(c); !errors.empty()) throw ConfigError(errors);
  fs::create_directories(c.out);
  {
    std::ofstream cfg(fs::path(c.out) / "config.ini");
    cfg << config::serialize(c);
  }
  switch (c.scenario) {
    case Scenario::exb_drift: return run_drift(c, kinetic::DriftKind::exb, log);
    case Scenario::gradb_drift: return run_drift(c, kinetic::DriftKind::gradb, log);
    case Scenario::mu_invariance: return run_mu(c, log);
    case Scenario::gc2d: return run_gc2d(c, log);
    case Scenario::pic_run: return run_pic(c, log);
    case Scenario::defect_scan: return run_defect(c, log);
    case Scenario::convergence: return run_convergence(c, log);
  }
  throw InvalidParameter("unknown scenario");
}

}  // namespace driftkin::cli
