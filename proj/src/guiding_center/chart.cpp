#include "driftkin/guiding_center/chart.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "driftkin/error.hpp"
#include "driftkin/guiding_center/interpolation.hpp"

namespace driftkin::gc {

namespace {

std::vector<double> node_b(const ReducedDistribution& F, const fields::MagneticFieldModel& model) {
  const TorusGrid& g = F.grid();
  std::vector<double> b(F.slab_size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Vec3 p = g.node(i);
    b[i] = fields::eval_b(model, 0.0, {p.x, p.y});
  }
  return b;
}

// Cubic Lagrange interpolation on a uniform non-periodic axis; the 4-point
// window is clamped inside the axis, and the value is 0 past the last node.
double interpolate_axis(const std::vector<double>& column, double h, double s) {
  const int n = static_cast<int>(column.size());
  const double u = s / h;
  if (u > n - 1 + 1e-12 || u < 0.0) return 0.0;
  int i0 = static_cast<int>(std::floor(u)) - 1;
  i0 = std::clamp(i0, 0, n - 4);
  const auto w = cubic_weights(u - (i0 + 1));
  return w[0] * column[i0] + w[1] * column[i0 + 1] + w[2] * column[i0 + 2] + w[3] * column[i0 + 3];
}

}  // namespace

double total_mass(const ReducedDistribution& F, const fields::MagneticFieldModel& model) {
  const double cell = F.grid().cell_volume();
  const std::size_t n = F.slab_size();
  std::vector<double> jac(n, 1.0);
  if (F.chart() == VelocityChart::mu) jac = node_b(F, model);
  double acc = 0.0;
  for (int j = 0; j < F.n_perp(); ++j) {
    for (int k = 0; k < F.n_par(); ++k) {
      const double weight = F.perp_weight(j) * F.par_weight(k) * cell;
      if (weight == 0.0) continue;
      const auto s = F.slab(j, k);
      double slab = 0.0;
      for (std::size_t i = 0; i < n; ++i) slab += jac[i] * s[i];
      acc += weight * slab;
    }
  }
  return acc;
}

ChartTransformResult chart_transform(const ReducedDistribution& F,
                                     const fields::MagneticFieldModel& model,
                                     VelocityChart target, int n_target, double target_max) {
  if (F.n_perp() < 4) throw InvalidParameter("chart transform needs at least 4 perpendicular nodes");
  if (target == F.chart()) return {F, 0.0};
  const std::vector<double> b = node_b(F, model);
  const auto [b_min, b_max] = std::minmax_element(b.begin(), b.end());
  const bool to_mu = target == VelocityChart::mu;
  if (n_target <= 0) n_target = F.n_perp();
  if (n_target < 4) throw InvalidParameter("target chart needs at least 4 perpendicular nodes");
  if (target_max <= 0.0) {
    target_max = to_mu ? F.perp_max() * F.perp_max() / (2.0 * *b_min)
                       : std::sqrt(2.0 * *b_max * F.perp_max());
  }

  ReducedDistribution out(F.grid(), n_target, target_max, F.n_par(), F.par_max(), target);
  const std::size_t n = F.slab_size();
  const double h_src = F.d_perp();
  std::vector<double> column(F.n_perp());
  double lost = 0.0;
  double total = 0.0;
  double worst = 0.0;

  for (int k = 0; k < F.n_par(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double bi = b[i];
      const double src_jac = to_mu ? 1.0 : bi;
      const double dst_jac = to_mu ? bi : 1.0;
      double src_mass = 0.0;
      for (int j = 0; j < F.n_perp(); ++j) {
        column[j] = F.at(i, j, k);
        const double m = src_jac * F.perp_weight(j) * column[j];
        src_mass += m;
        // Source node lies outside the target range.
        const double mapped = to_mu ? F.perp(j) * F.perp(j) / (2.0 * bi)
                                    : std::sqrt(2.0 * bi * F.perp(j));
        if (mapped > target_max * (1.0 + 1e-12)) lost += std::abs(m);
        total += std::abs(m);
      }
      double dst_mass = 0.0;
      for (int j = 0; j < n_target; ++j) {
        const double q = out.perp(j);
        const double s = to_mu ? std::sqrt(2.0 * bi * q) : q * q / (2.0 * bi);
        const double v = interpolate_axis(column, h_src, s);
        out.at(i, j, k) = v;
        dst_mass += dst_jac * out.perp_weight(j) * v;
      }
      if (dst_mass != 0.0 && src_mass != 0.0) {
        const double scale = src_mass / dst_mass;
        worst = std::max(worst, std::abs(scale - 1.0));
        for (int j = 0; j < n_target; ++j) out.at(i, j, k) *= scale;
      }
    }
  }
  if (total > 0.0 && lost / total > 1e-10) {
    std::ostringstream os;
    os << "target " << (to_mu ? "mu" : "w") << "_max = " << target_max
       << " truncates the source support (lost mass fraction " << lost / total << ")";
    throw InsufficientData(os.str());
  }
  return {std::move(out), worst};
}

}  // namespace driftkin::gc
