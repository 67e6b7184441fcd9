#include "driftkin/gyro/gyro_coordinates.hpp"

#include <cmath>
#include <string>

#include "driftkin/error.hpp"
#include "driftkin/simd/kernels.hpp"

namespace driftkin::gyro {

GyroCoordinates to_gyro(const Vec3& v) {
  const double w = std::hypot(v.x, v.y);
  if (w == 0.0) return {0.0, 0.0, v.z};
  double theta = std::atan2(v.y, v.x);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta -= kTwoPi;
  return {w, theta, v.z};
}

Vec3 from_gyro(const GyroCoordinates& c) {
  return {c.w * std::cos(c.theta), c.w * std::sin(c.theta), c.v_par};
}

GyrophaseSampling::GyrophaseSampling(std::vector<double> values) : values_(std::move(values)) {
  const auto n = values_.size();
  if (n < 4 || n % 2 != 0) {
    throw InvalidParameter("gyrophase sampling needs an even number >= 4 of nodes, got " +
                           std::to_string(n));
  }
}

GyrophaseSampling GyrophaseSampling::sample(int n, const std::function<double(double)>& fn) {
  std::vector<double> v(n > 0 ? n : 0);
  for (int j = 0; j < n; ++j) v[j] = fn(kTwoPi * j / n);
  return GyrophaseSampling(std::move(v));
}

GyrophaseDerivative::GyrophaseDerivative(int n) : n_(n), matrix_(static_cast<std::size_t>(n) * n) {
  if (n < 4 || n % 2 != 0) throw InvalidParameter("gyrophase derivative needs even N >= 4");
  const double h = kTwoPi / n;
  std::vector<double> column(n, 0.0);
  for (int k = 1; k < n; ++k) {
    column[k] = 0.5 * (k % 2 == 0 ? 1.0 : -1.0) / std::tan(0.5 * k * h);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) matrix_[i * n + j] = column[((i - j) % n + n) % n];
  }
}

void GyrophaseDerivative::apply(std::span<const double> in, std::span<double> out) const {
  for (int i = 0; i < n_; ++i) {
    out[i] = simd::dot({matrix_.data() + static_cast<std::size_t>(i) * n_, in.size()}, in);
  }
}

double gyroaverage(const GyrophaseSampling& s) {
  return simd::sum(s.values()) / s.size();
}

GyrophaseSampling apply_L(const GyrophaseSampling& s, double b) {
  GyrophaseDerivative d(s.size());
  std::vector<double> out(s.size());
  d.apply(s.values(), out);
  for (double& v : out) v *= b;
  return GyrophaseSampling(std::move(out));
}

}  // namespace driftkin::gyro
