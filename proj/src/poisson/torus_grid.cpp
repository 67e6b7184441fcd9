#include "driftkin/poisson/torus_grid.hpp"

#include <numeric>
#include <string>

#include "driftkin/error.hpp"
#include "driftkin/poisson/grid_field.hpp"

namespace driftkin {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

TorusGrid::TorusGrid(int dimension, std::array<double, 3> lengths, std::array<int, 3> counts)
    : dim_(dimension), lengths_(lengths), counts_(counts) {
  if (dimension != 2 && dimension != 3) throw InvalidParameter("torus dimension must be 2 or 3");
  for (int a = 0; a < dimension; ++a) {
    if (counts[a] < 8 || !power_of_two(counts[a])) {
      throw InvalidParameter("grid count along axis " + std::to_string(a) +
                             " must be a power of two >= 8, got " + std::to_string(counts[a]));
    }
    if (!(lengths[a] > 0.0)) {
      throw InvalidParameter("grid length along axis " + std::to_string(a) + " must be positive");
    }
  }
  if (dimension == 2) {
    counts_[2] = 1;
    lengths_[2] = 1.0;
  }
}

double TorusGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= spacing(a);
  return v;
}

double TorusGrid::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= lengths_[a];
  return v;
}

std::array<int, 3> TorusGrid::multi_index(std::size_t flat) const {
  const std::size_t nz = dim_ == 3 ? counts_[2] : 1;
  const int k = static_cast<int>(flat % nz);
  flat /= nz;
  const int j = static_cast<int>(flat % counts_[1]);
  const int i = static_cast<int>(flat / counts_[1]);
  return {i, j, k};
}

Vec3 TorusGrid::node(std::size_t flat) const {
  const auto m = multi_index(flat);
  return {m[0] * spacing(0), m[1] * spacing(1), dim_ == 3 ? m[2] * spacing(2) : 0.0};
}

ScalarField ScalarField::sample(const TorusGrid& g, const std::function<double(const Vec3&)>& fn) {
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = fn(g.node(i));
  return f;
}

double ScalarField::mean() const {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double ScalarField::integral() const {
  return std::accumulate(values.begin(), values.end(), 0.0) * grid.cell_volume();
}

double VectorField::squared_norm_integral() const {
  double acc = 0.0;
  for (int a = 0; a < grid.dimension(); ++a) {
    for (double v : components[a]) acc += v * v;
  }
  return acc * grid.cell_volume();
}

}  // namespace driftkin
