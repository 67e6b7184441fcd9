#include "driftkin/guiding_center/reduced_distribution.hpp"

#include <algorithm>

#include "driftkin/error.hpp"

namespace driftkin {

ReducedDistribution::ReducedDistribution(const TorusGrid& x_grid, int n_perp, double perp_max,
                                         int n_par, double par_max, VelocityChart chart)
    : grid_(x_grid),
      n_perp_(n_perp),
      perp_max_(perp_max),
      n_par_(n_par),
      par_max_(par_max),
      chart_(chart) {
  if (n_perp < 3 || n_par < 3) throw InvalidParameter("velocity grids need at least 3 nodes");
  if (!(perp_max > 0.0) || !(par_max > 0.0)) {
    throw InvalidParameter("velocity extents must be positive");
  }
  values_.assign(static_cast<std::size_t>(n_perp) * n_par * grid_.size(), 0.0);
}

ReducedDistribution ReducedDistribution::zeros_like(const ReducedDistribution& other) {
  return ReducedDistribution(other.grid_, other.n_perp_, other.perp_max_, other.n_par_,
                             other.par_max_, other.chart_);
}

double ReducedDistribution::perp_weight(int j) const {
  const double end = (j == 0 || j == n_perp_ - 1) ? 0.5 : 1.0;
  const double jac = chart_ == VelocityChart::w ? perp(j) : 1.0;
  return end * d_perp() * jac;
}

double ReducedDistribution::par_weight(int k) const {
  const double end = (k == 0 || k == n_par_ - 1) ? 0.5 : 1.0;
  return end * d_par();
}

void ReducedDistribution::fill(
    const std::function<double(const Vec3& x, double perp, double par)>& fn) {
  const std::size_t n = slab_size();
  for (int j = 0; j < n_perp_; ++j) {
    for (int k = 0; k < n_par_; ++k) {
      auto s = slab(j, k);
      for (std::size_t i = 0; i < n; ++i) s[i] = fn(grid_.node(i), perp(j), par(k));
    }
  }
}

bool ReducedDistribution::same_shape(const ReducedDistribution& o) const {
  return grid_ == o.grid_ && n_perp_ == o.n_perp_ && n_par_ == o.n_par_ &&
         perp_max_ == o.perp_max_ && par_max_ == o.par_max_ && chart_ == o.chart_;
}

double ReducedDistribution::min_value() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

}  // namespace driftkin
