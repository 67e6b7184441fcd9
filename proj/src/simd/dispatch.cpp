#include <atomic>
#include <cstdlib>
#include <string>

#include "driftkin/error.hpp"
#include "driftkin/simd/kernels.hpp"

namespace driftkin::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return avx2::compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* forced = std::getenv("DRIFTKIN_SIMD")) {
    if (std::string(forced) == "scalar") return Isa::scalar;
  }
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa detected_isa() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) {
    throw InvalidParameter("AVX2 kernels are not available on this CPU/build");
  }
  active().store(isa, std::memory_order_relaxed);
}

void boris_push(const ParticleView& p, const ConstFieldView& e, std::span<const double> c,
                std::span<const double> s, double ds) {
  if (active_isa() == Isa::avx2) {
    avx2::boris_push(p, e, c, s, ds);
  } else {
    scalar::boris_push(p, e, c, s, ds);
  }
}

void wrap_periodic(std::span<double> x, double length) {
  if (active_isa() == Isa::avx2) {
    avx2::wrap_periodic(x, length);
  } else {
    scalar::wrap_periodic(x, length);
  }
}

void scale_complex(std::span<double> z, std::span<const double> f) {
  if (active_isa() == Isa::avx2) {
    avx2::scale_complex(z, f);
  } else {
    scalar::scale_complex(z, f);
  }
}

double sum(std::span<const double> a) {
  return active_isa() == Isa::avx2 ? avx2::sum(a) : scalar::sum(a);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active_isa() == Isa::avx2 ? avx2::dot(a, b) : scalar::dot(a, b);
}

double kinetic_energy(std::span<const double> w, std::span<const double> vx,
                      std::span<const double> vy, std::span<const double> vz) {
  return active_isa() == Isa::avx2 ? avx2::kinetic_energy(w, vx, vy, vz)
                                   : scalar::kinetic_energy(w, vx, vy, vz);
}

}  // namespace driftkin::simd
