#include "driftkin/diagnostics/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "driftkin/error.hpp"
#include "driftkin/poisson/spectral.hpp"
#include "driftkin/simd/kernels.hpp"

namespace driftkin::diag {

EnergyParts energy_full(const kinetic::ParticleEnsemble& ens, const VectorField& electric) {
  const double kinetic = simd::kinetic_energy(ens.weight, ens.vx, ens.vy, ens.vz);
  const double field = electric.grid.size() == 0 || electric.components[0].empty()
                           ? 0.0
                           : 0.5 * electric.squared_norm_integral();
  return make_energy(kinetic, field);
}

EnergyParts energy_reduced(const ReducedDistribution& F, const VectorField& electric) {
  if (F.chart() != VelocityChart::w) {
    throw InvalidParameter("energy_reduced expects the w-chart; convert with chart_transform first");
  }
  const double cell = F.grid().cell_volume();
  double kinetic = 0.0;
  for (int j = 0; j < F.n_perp(); ++j) {
    const double w = F.perp(j);
    for (int k = 0; k < F.n_par(); ++k) {
      const double v = F.par(k);
      const double weight = 0.5 * (w * w + v * v) * F.perp_weight(j) * F.par_weight(k) * cell;
      if (weight == 0.0) continue;
      kinetic += weight * simd::sum(F.slab(j, k));
    }
  }
  const double field = electric.components[0].empty()
                           ? 0.0
                           : electric.squared_norm_integral() / (4.0 * kPi);
  return make_energy(kinetic, field);
}

double lp_norm_reduced(const ReducedDistribution& F, double p,
                       const fields::MagneticFieldModel* model) {
  const bool inf = std::isinf(p) && p > 0;
  if (!inf && p != 1.0 && p != 2.0) {
    throw InvalidParameter("lp_norm_reduced supports p = 1, 2, inf");
  }
  if (inf) {
    double m = 0.0;
    for (double v : F.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const std::size_t n = F.slab_size();
  std::vector<double> jac(n, 1.0);
  if (F.chart() == VelocityChart::mu) {
    if (!model) throw InvalidParameter("mu-chart norms need the magnetic field model");
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 x = F.grid().node(i);
      jac[i] = fields::eval_b(*model, 0.0, {x.x, x.y});
    }
  }
  const double cell = F.grid().cell_volume();
  double acc = 0.0;
  for (int j = 0; j < F.n_perp(); ++j) {
    for (int k = 0; k < F.n_par(); ++k) {
      const double weight = F.perp_weight(j) * F.par_weight(k) * cell;
      if (weight == 0.0) continue;
      const auto s = F.slab(j, k);
      double slab = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(s[i]);
        slab += jac[i] * (p == 1.0 ? a : a * a);
      }
      acc += weight * slab;
    }
  }
  return p == 1.0 ? acc : std::sqrt(acc);
}

double longitudinal_momentum_variation(const ReducedDistribution& F) {
  if (F.chart() != VelocityChart::w) {
    throw InvalidParameter("longitudinal_momentum_variation expects the w-chart");
  }
  if (F.grid().dimension() < 3) return 0.0;
  const std::size_t n = F.slab_size();
  double scale = 0.0;
  double worst = 0.0;
  ScalarField moment(F.grid());
  SpectralOps ops(F.grid());
  std::vector<double> abs_moment(n);
  for (int j = 0; j < F.n_perp(); ++j) {
    std::fill(moment.values.begin(), moment.values.end(), 0.0);
    std::fill(abs_moment.begin(), abs_moment.end(), 0.0);
    for (int k = 0; k < F.n_par(); ++k) {
      const double v = F.par(k);
      const double weight = F.par_weight(k);
      const auto s = F.slab(j, k);
      for (std::size_t i = 0; i < n; ++i) {
        moment.values[i] += weight * v * s[i];
        abs_moment[i] += weight * std::abs(v * s[i]);
      }
    }
    const auto d = ops.derivative(moment.values, 2);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(d[i]));
      scale = std::max(scale, abs_moment[i]);
    }
  }
  if (scale == 0.0) return 0.0;
  return worst / scale;
}

namespace {

Vec2 position_at(const Trajectory& tr, double t) {
  const auto it = std::lower_bound(tr.t.begin(), tr.t.end(), t);
  if (it == tr.t.begin()) return tr.x.front();
  if (it == tr.t.end()) return tr.x.back();
  const std::size_t hi = static_cast<std::size_t>(it - tr.t.begin());
  const std::size_t lo = hi - 1;
  const double span = tr.t[hi] - tr.t[lo];
  const double a = span > 0.0 ? (t - tr.t[lo]) / span : 0.0;
  return (1.0 - a) * tr.x[lo] + a * tr.x[hi];
}

}  // namespace

Vec2 drift_measurement(const Trajectory& tr, double gyroperiod, int n_periods) {
  if (!(gyroperiod > 0.0) || n_periods < 1) {
    throw InvalidParameter("drift window needs a positive gyroperiod and n_periods >= 1");
  }
  if (tr.t.size() != tr.x.size() || tr.t.size() < 2) {
    throw InsufficientData("trajectory needs at least two samples");
  }
  const double window = gyroperiod * n_periods;
  const double t0 = tr.t.front();
  if (tr.t.back() < t0 + window * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "trajectory covers " << (tr.t.back() - t0) / gyroperiod << " gyroperiods, window needs "
       << n_periods;
    throw InsufficientData(os.str());
  }
  return (1.0 / window) * (position_at(tr, t0 + window) - tr.x.front());
}

ConvergenceTable convergence_study(const std::function<double(double)>& error_at,
                                   const std::vector<double>& eps_list) {
  if (eps_list.size() < 3) throw InvalidParameter("convergence study needs at least 3 epsilons");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw InvalidParameter("epsilons must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw InvalidParameter("epsilons must be strictly decreasing");
    }
  }
  ConvergenceTable table;
  for (double eps : eps_list) {
    ConvergenceRow row;
    row.epsilon = eps;
    try {
      row.error = error_at(eps);
      if (!std::isfinite(row.error)) throw SolverFailure("non-finite error");
    } catch (const std::exception& e) {
      row.failed = true;
      row.failure = e.what();
      row.error = kAbsent;
    }
    if (!table.rows.empty() && !row.failed && !table.rows.back().failed) {
      row.ratio = table.rows.back().error / row.error;
    }
    table.rows.push_back(row);
  }
  std::vector<double> lx, ly;
  bool all_tiny = true;
  for (const auto& r : table.rows) {
    if (r.failed) continue;
    if (r.error > 1e-10) all_tiny = false;
    if (r.error > 0.0) {
      lx.push_back(std::log(r.epsilon));
      ly.push_back(std::log(r.error));
    }
  }
  if (all_tiny) {
    table.trivial = true;
    return table;
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    table.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return table;
}

void write_convergence_json(const ConvergenceTable& table, const std::filesystem::path& path) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json row{{"epsilon", r.epsilon}, {"error", num(r.error)}, {"ratio", num(r.ratio)}};
    if (r.failed) row["failure"] = r.failure;
    arr.push_back(row);
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << arr.dump(2) << '\n';
}

}  // namespace driftkin::diag
