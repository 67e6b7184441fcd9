// Compiled with -mavx2 (no -mfma) when the toolchain targets x86-64.

#include "driftkin/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace driftkin::simd::avx2 {

#if defined(__AVX2__)

bool compiled() { return true; }

void boris_push(const ParticleView& p, const ConstFieldView& e, std::span<const double> c,
                std::span<const double> s, double ds) {
  const std::size_t n = p.size();
  const __m256d h = _mm256_set1_pd(0.5 * ds);
  const __m256d dsv = _mm256_set1_pd(ds);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ex = _mm256_loadu_pd(&e.ex[i]);
    const __m256d ey = _mm256_loadu_pd(&e.ey[i]);
    const __m256d ez = _mm256_loadu_pd(&e.ez[i]);
    const __m256d cc = _mm256_loadu_pd(&c[i]);
    const __m256d ss = _mm256_loadu_pd(&s[i]);
    const __m256d hex = _mm256_mul_pd(h, ex);
    const __m256d hey = _mm256_mul_pd(h, ey);
    const __m256d hez = _mm256_mul_pd(h, ez);
    const __m256d ux = _mm256_add_pd(_mm256_loadu_pd(&p.vx[i]), hex);
    const __m256d uy = _mm256_add_pd(_mm256_loadu_pd(&p.vy[i]), hey);
    const __m256d uz = _mm256_add_pd(_mm256_loadu_pd(&p.vz[i]), hez);
    const __m256d rx = _mm256_add_pd(_mm256_mul_pd(cc, ux), _mm256_mul_pd(ss, uy));
    const __m256d ry = _mm256_sub_pd(_mm256_mul_pd(cc, uy), _mm256_mul_pd(ss, ux));
    const __m256d vx = _mm256_add_pd(rx, hex);
    const __m256d vy = _mm256_add_pd(ry, hey);
    const __m256d vz = _mm256_add_pd(uz, hez);
    _mm256_storeu_pd(&p.vx[i], vx);
    _mm256_storeu_pd(&p.vy[i], vy);
    _mm256_storeu_pd(&p.vz[i], vz);
    _mm256_storeu_pd(&p.x[i], _mm256_add_pd(_mm256_loadu_pd(&p.x[i]), _mm256_mul_pd(dsv, vx)));
    _mm256_storeu_pd(&p.y[i], _mm256_add_pd(_mm256_loadu_pd(&p.y[i]), _mm256_mul_pd(dsv, vy)));
    _mm256_storeu_pd(&p.z[i], _mm256_add_pd(_mm256_loadu_pd(&p.z[i]), _mm256_mul_pd(dsv, vz)));
  }
  if (i < n) {
    const ParticleView tail{p.x.subspan(i), p.y.subspan(i), p.z.subspan(i),
                            p.vx.subspan(i), p.vy.subspan(i), p.vz.subspan(i)};
    const ConstFieldView etail{e.ex.subspan(i), e.ey.subspan(i), e.ez.subspan(i)};
    scalar::boris_push(tail, etail, c.subspan(i), s.subspan(i), ds);
  }
}

void wrap_periodic(std::span<double> x, double length) {
  const std::size_t n = x.size();
  const __m256d len = _mm256_set1_pd(length);
  const __m256d inv = _mm256_set1_pd(1.0 / length);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(&x[i]);
    const __m256d fl = _mm256_floor_pd(_mm256_mul_pd(v, inv));
    __m256d r = _mm256_sub_pd(v, _mm256_mul_pd(len, fl));
    const __m256d over = _mm256_cmp_pd(r, len, _CMP_GE_OQ);
    r = _mm256_blendv_pd(r, _mm256_sub_pd(r, len), over);
    _mm256_storeu_pd(&x[i], r);
  }
  if (i < n) scalar::wrap_periodic(x.subspan(i), length);
}

void scale_complex(std::span<double> z, std::span<const double> f) {
  const std::size_t n = f.size();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    // (f0, f0, f1, f1) against (re0, im0, re1, im1)
    const __m128d f2 = _mm_loadu_pd(&f[k]);
    const __m256d ff = _mm256_permute4x64_pd(_mm256_castpd128_pd256(f2), 0x50);
    _mm256_storeu_pd(&z[2 * k], _mm256_mul_pd(_mm256_loadu_pd(&z[2 * k]), ff));
  }
  if (k < n) scalar::scale_complex(z.subspan(2 * k), f.subspan(k));
}

namespace {

double horizontal_sum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

double sum(std::span<const double> a) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(&a[i]));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(&a[i + 4]));
  }
  double total = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += a[i];
  return total;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4])));
  }
  double total = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

double kinetic_energy(std::span<const double> w, std::span<const double> vx,
                      std::span<const double> vy, std::span<const double> vz) {
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(&vx[i]);
    const __m256d y = _mm256_loadu_pd(&vy[i]);
    const __m256d z = _mm256_loadu_pd(&vz[i]);
    const __m256d sq =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)), _mm256_mul_pd(z, z));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(&w[i]), sq));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += w[i] * (vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i]);
  return 0.5 * total;
}

#else

bool compiled() { return false; }

void boris_push(const ParticleView& p, const ConstFieldView& e, std::span<const double> c,
                std::span<const double> s, double ds) {
  scalar::boris_push(p, e, c, s, ds);
}
void wrap_periodic(std::span<double> x, double length) { scalar::wrap_periodic(x, length); }
void scale_complex(std::span<double> z, std::span<const double> f) { scalar::scale_complex(z, f); }
double sum(std::span<const double> a) { return scalar::sum(a); }
double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
double kinetic_energy(std::span<const double> w, std::span<const double> vx,
                      std::span<const double> vy, std::span<const double> vz) {
  return scalar::kinetic_energy(w, vx, vy, vz);
}

#endif

}  // namespace driftkin::simd::avx2
