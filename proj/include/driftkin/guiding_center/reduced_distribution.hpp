#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "driftkin/poisson/torus_grid.hpp"

namespace driftkin {

/// Which perpendicular velocity coordinate the second axis carries.
/// w-chart: w in [0, w_max], measure w dw dv_par dx.
/// mu-chart: mu in [0, mu_max], measure b(x_perp) dmu dv_par dx.
enum class VelocityChart { w, mu };

/// Grid function F(x, w, v_par) (or F(x, mu, v_par)).
///
/// Storage is one contiguous x-slab per (perp, par) node pair, so spectral
/// x-derivatives run on contiguous memory. The parallel axis is symmetric:
/// v_k = (k - (n_par - 1)/2) dv, so v_k == -v_{n_par-1-k} exactly.
class ReducedDistribution {
public:
  ReducedDistribution() = default;
  ReducedDistribution(const TorusGrid& x_grid, int n_perp, double perp_max, int n_par,
                      double par_max, VelocityChart chart = VelocityChart::w);

  /// Same shape and chart, zero values.
  static ReducedDistribution zeros_like(const ReducedDistribution& other);

  const TorusGrid& grid() const { return grid_; }
  VelocityChart chart() const { return chart_; }
  int n_perp() const { return n_perp_; }
  int n_par() const { return n_par_; }
  double perp_max() const { return perp_max_; }
  double par_max() const { return par_max_; }
  double d_perp() const { return perp_max_ / (n_perp_ - 1); }
  double d_par() const { return 2.0 * par_max_ / (n_par_ - 1); }
  double perp(int j) const { return j * d_perp(); }
  double par(int k) const { return (k - 0.5 * (n_par_ - 1)) * d_par(); }

  /// Trapezoid weight of perp node j, including the w factor in the w-chart
  /// (the b factor of the mu-chart is position dependent and left to callers).
  double perp_weight(int j) const;
  double par_weight(int k) const;

  std::size_t slab_size() const { return grid_.size(); }
  std::size_t slab_index(int j, int k) const { return static_cast<std::size_t>(j) * n_par_ + k; }
  std::span<double> slab(int j, int k) {
    return {values_.data() + slab_index(j, k) * slab_size(), slab_size()};
  }
  std::span<const double> slab(int j, int k) const {
    return {values_.data() + slab_index(j, k) * slab_size(), slab_size()};
  }
  double& at(std::size_t x, int j, int k) { return values_[slab_index(j, k) * slab_size() + x]; }
  double at(std::size_t x, int j, int k) const {
    return values_[slab_index(j, k) * slab_size() + x];
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  /// Fills F(x, perp, par) from a closure.
  void fill(const std::function<double(const Vec3& x, double perp, double par)>& fn);

  bool same_shape(const ReducedDistribution& other) const;
  double min_value() const;

private:
  TorusGrid grid_;
  int n_perp_ = 0;
  double perp_max_ = 0.0;
  int n_par_ = 0;
  double par_max_ = 0.0;
  VelocityChart chart_ = VelocityChart::w;
  std::vector<double> values_;
};

}  // namespace driftkin
