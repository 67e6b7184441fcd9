#pragma once

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
//
// The elementwise kernels (boris_push, wrap_periodic, scale_complex) use the
// same operation order in both variants and no fused multiply-add, so their
// results are bit-identical across variants. Reductions (sum, dot,
// kinetic_energy) reassociate in the AVX2 variant and agree with the scalar
// reference to rounding only.

#include <cstddef>
#include <span>
#include <string_view>

namespace driftkin::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Best variant the running CPU supports.
Isa detected_isa();

/// Variant used by the dispatching entry points below. Defaults to
/// detected_isa(); the environment variable DRIFTKIN_SIMD=scalar forces the
/// reference path.
Isa active_isa();

/// Throws InvalidParameter when the CPU lacks the requested ISA.
void set_active_isa(Isa isa);

/// Structure-of-arrays view of a particle batch. All spans have equal length.
struct ParticleView {
  std::span<double> x, y, z;
  std::span<double> vx, vy, vz;
  std::size_t size() const { return x.size(); }
};

struct ConstFieldView {
  std::span<const double> ex, ey, ez;
};

/// One exact-rotation Boris step in fast time:
///   v- = v + (ds/2) E
///   (vx, vy) rotated clockwise by the angle whose cosine/sine are given
///   v+ = rot(v-) + (ds/2) E,  x += ds v+
/// The z component is never touched by the rotation.
void boris_push(const ParticleView& p, const ConstFieldView& e, std::span<const double> cos_angle,
                std::span<const double> sin_angle, double ds);

/// x <- x - L floor(x / L), result in [0, L).
void wrap_periodic(std::span<double> x, double length);

/// Multiplies interleaved complex values c[k] (re, im pairs) by real factors f[k].
void scale_complex(std::span<double> interleaved, std::span<const double> factors);

double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);

/// (1/2) sum_i w_i (vx_i^2 + vy_i^2 + vz_i^2)
double kinetic_energy(std::span<const double> weight, std::span<const double> vx,
                      std::span<const double> vy, std::span<const double> vz);

namespace scalar {
void boris_push(const ParticleView& p, const ConstFieldView& e, std::span<const double> cos_angle,
                std::span<const double> sin_angle, double ds);
void wrap_periodic(std::span<double> x, double length);
void scale_complex(std::span<double> interleaved, std::span<const double> factors);
double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double kinetic_energy(std::span<const double> weight, std::span<const double> vx,
                      std::span<const double> vy, std::span<const double> vz);
}  // namespace scalar

namespace avx2 {
bool compiled();
void boris_push(const ParticleView& p, const ConstFieldView& e, std::span<const double> cos_angle,
                std::span<const double> sin_angle, double ds);
void wrap_periodic(std::span<double> x, double length);
void scale_complex(std::span<double> interleaved, std::span<const double> factors);
double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double kinetic_energy(std::span<const double> weight, std::span<const double> vx,
                      std::span<const double> vy, std::span<const double> vz);
}  // namespace avx2

}  // namespace driftkin::simd
