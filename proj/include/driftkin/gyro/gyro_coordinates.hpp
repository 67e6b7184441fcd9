#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "driftkin/vec.hpp"

namespace driftkin::gyro {

/// Polar velocity coordinates: v_x = w cos(theta), v_y = w sin(theta), v_par = v_z.
struct GyroCoordinates {
  double w = 0.0;
  double theta = 0.0;  // in [0, 2 pi); 0 by convention when w == 0
  double v_par = 0.0;
};

GyroCoordinates to_gyro(const Vec3& v);
Vec3 from_gyro(const GyroCoordinates& c);

inline Vec2 e_w(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline Vec2 e_theta(double theta) { return {-std::sin(theta), std::cos(theta)}; }

/// Samples of a function at the uniform gyrophase nodes theta_j = 2 pi j / N.
/// N is even and at least 4.
class GyrophaseSampling {
public:
  explicit GyrophaseSampling(std::vector<double> values);
  static GyrophaseSampling sample(int n, const std::function<double(double)>& fn);

  int size() const { return static_cast<int>(values_.size()); }
  double theta(int j) const { return kTwoPi * j / size(); }
  std::span<const double> values() const { return values_; }
  double operator[](int j) const { return values_[j]; }

private:
  std::vector<double> values_;
};

/// Fourier differentiation matrix on N uniform nodes (N even). Exact for
/// trigonometric polynomials of degree < N/2; the cos(N theta / 2) mode maps to 0.
class GyrophaseDerivative {
public:
  explicit GyrophaseDerivative(int n);
  int size() const { return n_; }
  void apply(std::span<const double> in, std::span<double> out) const;

private:
  int n_;
  std::vector<double> matrix_;
};

/// Pi f: rectangle rule (1/N) sum f(theta_j), spectrally exact for
/// trigonometric polynomials of degree < N.
double gyroaverage(const GyrophaseSampling& s);

/// L f = b d f / d theta via spectral differentiation.
GyrophaseSampling apply_L(const GyrophaseSampling& s, double b);

}  // namespace driftkin::gyro
