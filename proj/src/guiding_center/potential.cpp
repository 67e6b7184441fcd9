#include "driftkin/guiding_center/potential.hpp"

#include <cmath>

#include "driftkin/error.hpp"
#include "driftkin/guiding_center/interpolation.hpp"
#include "driftkin/poisson/spectral.hpp"

namespace driftkin {

double interpolate_cubic(const TorusGrid& grid, std::span<const double> values, Vec2 x) {
  const double hx = grid.spacing(0);
  const double hy = grid.spacing(1);
  const double sx = x.x / hx;
  const double sy = x.y / hy;
  const double fx = std::floor(sx);
  const double fy = std::floor(sy);
  const auto wx = cubic_weights(sx - fx);
  const auto wy = cubic_weights(sy - fy);
  const int ix = static_cast<int>(fx);
  const int iy = static_cast<int>(fy);
  const int ny = grid.count(1);
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    const std::size_t row = static_cast<std::size_t>(grid.wrap(ix - 1 + a, 0)) * ny;
    double line = 0.0;
    for (int c = 0; c < 4; ++c) line += wy[c] * values[row + grid.wrap(iy - 1 + c, 1)];
    acc += wx[a] * line;
  }
  return acc;
}

struct PotentialModel::GridData {
  ScalarField phi;
  VectorField grad;
};

PotentialModel PotentialModel::zero() { return {}; }

PotentialModel PotentialModel::uniform_field(Vec2 electric) {
  PotentialModel p;
  p.kind_ = Kind::uniform_field;
  p.vec_ = electric;
  return p;
}

PotentialModel PotentialModel::quadratic_well(Vec2 center, double strength) {
  PotentialModel p;
  p.kind_ = Kind::quadratic_well;
  p.vec_ = center;
  p.scalar_ = strength;
  return p;
}

PotentialModel PotentialModel::cellular(double amplitude, Vec2 mode) {
  PotentialModel p;
  p.kind_ = Kind::cellular;
  p.vec_ = mode;
  p.scalar_ = amplitude;
  return p;
}

PotentialModel PotentialModel::grid(const ScalarField& phi) {
  if (phi.grid.dimension() != 2) throw ShapeError("grid potential must live on a 2D torus");
  auto data = std::make_shared<GridData>();
  data->phi = phi;
  SpectralOps ops(phi.grid);
  data->grad = ops.gradient(phi);
  PotentialModel p;
  p.kind_ = Kind::grid;
  p.grid_ = std::move(data);
  return p;
}

double PotentialModel::value(Vec2 x) const {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::uniform_field: return -dot(vec_, x);
    case Kind::quadratic_well: {
      const Vec2 d = x - vec_;
      return 0.5 * scalar_ * dot(d, d);
    }
    case Kind::cellular: return scalar_ * std::sin(vec_.x * x.x) * std::sin(vec_.y * x.y);
    case Kind::grid: return interpolate_cubic(grid_->phi.grid, grid_->phi.values, x);
  }
  return 0.0;
}

Vec2 PotentialModel::gradient(Vec2 x) const {
  switch (kind_) {
    case Kind::zero: return {};
    case Kind::uniform_field: return -vec_;
    case Kind::quadratic_well: return scalar_ * (x - vec_);
    case Kind::cellular:
      return {scalar_ * vec_.x * std::cos(vec_.x * x.x) * std::sin(vec_.y * x.y),
              scalar_ * vec_.y * std::sin(vec_.x * x.x) * std::cos(vec_.y * x.y)};
    case Kind::grid:
      return {interpolate_cubic(grid_->grad.grid, grid_->grad[0], x),
              interpolate_cubic(grid_->grad.grid, grid_->grad[1], x)};
  }
  return {};
}

std::string_view to_string(PotentialModel::Kind k) {
  switch (k) {
    case PotentialModel::Kind::zero: return "zero";
    case PotentialModel::Kind::uniform_field: return "uniform-field";
    case PotentialModel::Kind::quadratic_well: return "quadratic-well";
    case PotentialModel::Kind::cellular: return "cellular";
    case PotentialModel::Kind::grid: return "grid";
  }
  return "unknown";
}

}  // namespace driftkin
