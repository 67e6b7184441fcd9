#include <cmath>

#include "driftkin/simd/kernels.hpp"

namespace driftkin::simd::scalar {

void boris_push(const ParticleView& p, const ConstFieldView& e, std::span<const double> c,
                std::span<const double> s, double ds) {
  const double h = 0.5 * ds;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ux = p.vx[i] + h * e.ex[i];
    const double uy = p.vy[i] + h * e.ey[i];
    const double uz = p.vz[i] + h * e.ez[i];
    const double rx = c[i] * ux + s[i] * uy;
    const double ry = c[i] * uy - s[i] * ux;
    const double vx = rx + h * e.ex[i];
    const double vy = ry + h * e.ey[i];
    const double vz = uz + h * e.ez[i];
    p.vx[i] = vx;
    p.vy[i] = vy;
    p.vz[i] = vz;
    p.x[i] += ds * vx;
    p.y[i] += ds * vy;
    p.z[i] += ds * vz;
  }
}

void wrap_periodic(std::span<double> x, double length) {
  const double inv = 1.0 / length;
  for (double& xi : x) {
    double r = xi - length * std::floor(xi * inv);
    if (r >= length) r -= length;
    xi = r;
  }
}

void scale_complex(std::span<double> z, std::span<const double> f) {
  const std::size_t n = f.size();
  for (std::size_t k = 0; k < n; ++k) {
    z[2 * k] *= f[k];
    z[2 * k + 1] *= f[k];
  }
}

double sum(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += v;
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double kinetic_energy(std::span<const double> w, std::span<const double> vx,
                      std::span<const double> vy, std::span<const double> vz) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i] * (vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i]);
  }
  return 0.5 * acc;
}

}  // namespace driftkin::simd::scalar
