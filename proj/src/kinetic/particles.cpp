#include "driftkin/kinetic/particles.hpp"

#include <cmath>
#include <random>

#include "driftkin/error.hpp"

namespace driftkin::kinetic {

void ParticleEnsemble::resize(std::size_t n) {
  for (auto* v : {&x, &y, &z, &vx, &vy, &vz, &weight, &shift_x, &shift_y, &shift_z}) {
    v->assign(n, 0.0);
  }
}

simd::ParticleView ParticleEnsemble::view() { return {x, y, z, vx, vy, vz}; }

double ParticleEnsemble::total_weight() const { return simd::sum(weight); }

void ParticleEnsemble::wrap(const TorusGrid& grid) {
  std::vector<double>* pos[3] = {&x, &y, &z};
  std::vector<double>* shift[3] = {&shift_x, &shift_y, &shift_z};
  const int axes = grid.dimension();
  for (int a = 0; a < axes; ++a) {
    const double length = grid.length(a);
    auto& p = *pos[a];
    auto& s = *shift[a];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] >= 0.0 && p[i] < length) continue;
      const double before = p[i];
      double r = before - length * std::floor(before / length);
      if (r >= length) r -= length;
      p[i] = r;
      s[i] += before - r;
    }
  }
}

namespace {

std::array<int, 3> lattice_shape(const TorusGrid& grid, std::size_t n_p) {
  const int dim = grid.dimension();
  const double volume = grid.volume();
  const double spacing = std::pow(volume / static_cast<double>(n_p), 1.0 / dim);
  std::array<int, 3> shape{1, 1, 1};
  for (int a = 0; a < dim; ++a) {
    shape[a] = std::max(1, static_cast<int>(std::floor(grid.length(a) / spacing + 1e-9)));
  }
  return shape;
}

}  // namespace

ParticleEnsemble sample_initial(const InitialSpec& spec, const TorusGrid& grid, std::size_t n_p,
                                std::uint64_t seed) {
  if (n_p == 0) throw InvalidParameter("particle count must be positive");
  if (spec.thermal_speed < 0.0 || spec.ring_speed < 0.0) {
    throw InvalidParameter("velocity spreads must be nonnegative");
  }
  if (spec.velocity == VelocityProfile::prescribed && !spec.velocity_field) {
    throw InvalidParameter("prescribed velocity profile needs a velocity field");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int dim = grid.dimension();

  std::vector<Vec3> positions;
  if (spec.spatial == SpatialProfile::lattice) {
    const auto shape = lattice_shape(grid, n_p);
    positions.reserve(static_cast<std::size_t>(shape[0]) * shape[1] * shape[2]);
    for (int i = 0; i < shape[0]; ++i) {
      for (int j = 0; j < shape[1]; ++j) {
        for (int k = 0; k < shape[2]; ++k) {
          Vec3 p{(i + 0.5) * grid.length(0) / shape[0], (j + 0.5) * grid.length(1) / shape[1], 0.0};
          if (dim == 3) p.z = (k + 0.5) * grid.length(2) / shape[2];
          positions.push_back(p);
        }
      }
    }
  } else {
    positions.resize(n_p);
    for (auto& p : positions) {
      if (spec.spatial == SpatialProfile::point) {
        p = spec.position;
      } else {
        p.x = grid.length(0) * unit(rng);
        p.y = grid.length(1) * unit(rng);
        p.z = dim == 3 ? grid.length(2) * unit(rng) : 0.0;
      }
    }
  }

  ParticleEnsemble e;
  e.seed = seed;
  e.resize(positions.size());
  const double volume = grid.volume();
  const double n = static_cast<double>(positions.size());
  double total = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Vec3& p = positions[i];
    e.x[i] = p.x;
    e.y[i] = p.y;
    e.z[i] = p.z;
    const double rho = spec.density ? spec.density(p) : spec.density0;
    if (!std::isfinite(rho) || rho < 0.0) {
      throw InvalidParameter("initial density must be finite and nonnegative");
    }
    e.weight[i] = rho * volume / n;
    total += e.weight[i];

    Vec3 v;
    switch (spec.velocity) {
      case VelocityProfile::maxwellian:
        v = spec.mean_velocity + spec.thermal_speed * Vec3{normal(rng), normal(rng), normal(rng)};
        break;
      case VelocityProfile::ring: {
        const double theta = kTwoPi * unit(rng);
        v = {spec.ring_speed * std::cos(theta), spec.ring_speed * std::sin(theta),
             spec.thermal_speed * normal(rng)};
        break;
      }
      case VelocityProfile::delta: v = spec.mean_velocity; break;
      case VelocityProfile::prescribed: v = spec.velocity_field(p); break;
    }
    e.vx[i] = v.x;
    e.vy[i] = v.y;
    e.vz[i] = v.z;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InvalidParameter("initial density integrates to zero and cannot be normalized");
  }
  e.wrap(grid);
  return e;
}

}  // namespace driftkin::kinetic
