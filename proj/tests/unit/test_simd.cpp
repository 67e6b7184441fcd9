#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "driftkin/error.hpp"
#include "driftkin/simd/kernels.hpp"

using namespace driftkin;
using namespace driftkin::simd;

namespace {

bool avx2_available() { return avx2::compiled() && detected_isa() == Isa::avx2; }

std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo = -5.0, double hi = 5.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

struct Batch {
  std::vector<double> x, y, z, vx, vy, vz;
  explicit Batch(std::size_t n, std::uint64_t seed)
      : x(random_vector(n, seed)), y(random_vector(n, seed + 1)), z(random_vector(n, seed + 2)),
        vx(random_vector(n, seed + 3)), vy(random_vector(n, seed + 4)), vz(random_vector(n, seed + 5)) {}
  ParticleView view() { return {x, y, z, vx, vy, vz}; }
  bool operator==(const Batch&) const = default;
};

}  // namespace

TEST_CASE("scalar Boris step matches a hand-written step") {
  Batch b(1, 3);
  const Batch start = b;
  const double ex = 0.3, ey = -0.2, ez = 0.5, ds = 0.01, angle = 0.2;
  const double c = std::cos(angle), s = std::sin(angle);
  const std::vector<double> exv{ex}, eyv{ey}, ezv{ez}, cv{c}, sv{s};
  scalar::boris_push(b.view(), {exv, eyv, ezv}, cv, sv, ds);
  const double ux = start.vx[0] + 0.5 * ds * ex, uy = start.vy[0] + 0.5 * ds * ey;
  const double rx = c * ux + s * uy, ry = c * uy - s * ux;
  const double vx = rx + 0.5 * ds * ex, vy = ry + 0.5 * ds * ey, vz = start.vz[0] + ds * ez;
  CHECK(b.vx[0] == doctest::Approx(vx).epsilon(1e-15));
  CHECK(b.vy[0] == doctest::Approx(vy).epsilon(1e-15));
  CHECK(b.vz[0] == doctest::Approx(vz).epsilon(1e-15));
  CHECK(b.x[0] == doctest::Approx(start.x[0] + ds * vx).epsilon(1e-15));
  CHECK(b.z[0] == doctest::Approx(start.z[0] + ds * vz).epsilon(1e-15));
}

TEST_CASE("pure rotation keeps the perpendicular speed") {
  Batch b(257, 5);
  const std::size_t n = b.x.size();
  std::vector<double> zero(n, 0.0), c(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::cos(0.1 + 0.001 * i);
    s[i] = std::sin(0.1 + 0.001 * i);
  }
  std::vector<double> w0(n);
  for (std::size_t i = 0; i < n; ++i) w0[i] = std::hypot(b.vx[i], b.vy[i]);
  for (int step = 0; step < 100; ++step) boris_push(b.view(), {zero, zero, zero}, c, s, 0.01);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(std::hypot(b.vx[i], b.vy[i]) - w0[i]) <= 1e-12 * w0[i]);
}

TEST_CASE("AVX2 elementwise kernels are bit-identical to the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available on this host; equivalence test skipped");
    return;
  }
  for (std::size_t n : {0, 1, 3, 4, 5, 17, 1000, 1027}) {
    Batch a(n, 100 + n), b = a;
    const auto ex = random_vector(n, 1), ey = random_vector(n, 2), ez = random_vector(n, 3);
    auto ang = random_vector(n, 4, -0.5, 0.5);
    std::vector<double> c(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = std::cos(ang[i]);
      s[i] = std::sin(ang[i]);
    }
    scalar::boris_push(a.view(), {ex, ey, ez}, c, s, 0.013);
    avx2::boris_push(b.view(), {ex, ey, ez}, c, s, 0.013);
    CHECK(a == b);

    auto w1 = random_vector(n, 7, -30.0, 30.0), w2 = w1;
    scalar::wrap_periodic(w1, 6.5);
    avx2::wrap_periodic(w2, 6.5);
    CHECK(w1 == w2);
    for (double v : w1) CHECK((v >= 0.0 && v < 6.5));

    auto z1 = random_vector(2 * n, 8), z2 = z1;
    const auto f = random_vector(n, 9);
    scalar::scale_complex(z1, f);
    avx2::scale_complex(z2, f);
    CHECK(z1 == z2);
  }
}

TEST_CASE("AVX2 reductions agree with the scalar reference to rounding") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available on this host; equivalence test skipped");
    return;
  }
  for (std::size_t n : {0, 1, 2, 3, 7, 8, 9, 1000, 4099}) {
    const auto a = random_vector(n, 10 + n), b = random_vector(n, 20 + n);
    const auto w = random_vector(n, 30 + n, 0.0, 1.0);
    double abs_sum = 0.0, abs_dot = 0.0, ke_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      abs_sum += std::abs(a[i]);
      abs_dot += std::abs(a[i] * b[i]);
      ke_scale += w[i] * (a[i] * a[i] + b[i] * b[i] + 1.0);
    }
    const double tol = 4.0 * n * 1.1e-16;
    CHECK(std::abs(avx2::sum(a) - scalar::sum(a)) <= tol * abs_sum + 1e-300);
    CHECK(std::abs(avx2::dot(a, b) - scalar::dot(a, b)) <= tol * abs_dot + 1e-300);
    const std::vector<double> ones(n, 1.0);
    CHECK(std::abs(avx2::kinetic_energy(w, a, b, ones) - scalar::kinetic_energy(w, a, b, ones)) <=
          tol * ke_scale + 1e-300);
  }
}

TEST_CASE("reductions match exact sums on representable data") {
  std::vector<double> a(1001);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(i);
  CHECK(sum(a) == 500500.0);
  CHECK(scalar::sum(a) == 500500.0);
  CHECK(dot(a, std::vector<double>(a.size(), 2.0)) == 1001000.0);
  const std::vector<double> w{2.0}, vx{3.0}, vy{4.0}, vz{0.0};
  CHECK(kinetic_energy(w, vx, vy, vz) == 25.0);
}

TEST_CASE("dispatch can be forced to the reference path") {
  const Isa before = active_isa();
  set_active_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  CHECK(to_string(Isa::scalar) == "scalar");
  if (avx2_available()) {
    set_active_isa(Isa::avx2);
    CHECK(active_isa() == Isa::avx2);
  } else {
    CHECK_THROWS_AS(set_active_isa(Isa::avx2), InvalidParameter);
  }
  set_active_isa(before);
}
