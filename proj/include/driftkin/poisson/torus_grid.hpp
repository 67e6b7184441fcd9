#pragma once

#include <array>
#include <cstddef>

#include "driftkin/vec.hpp"

namespace driftkin {

/// Uniform periodic grid on a 2- or 3-torus. Node i sits at i * h.
/// Flat index is row-major with the last axis fastest.
class TorusGrid {
public:
  TorusGrid() = default;
  /// Throws InvalidParameter unless every count is a power of two >= 8 and
  /// every length is positive.
  TorusGrid(int dimension, std::array<double, 3> lengths, std::array<int, 3> counts);

  static TorusGrid square(int n, double length = kTwoPi) {
    return TorusGrid(2, {length, length, 1.0}, {n, n, 1});
  }
  static TorusGrid cube(int n, double length = kTwoPi) {
    return TorusGrid(3, {length, length, length}, {n, n, n});
  }

  int dimension() const { return dim_; }
  double length(int axis) const { return lengths_[axis]; }
  int count(int axis) const { return counts_[axis]; }
  double spacing(int axis) const { return lengths_[axis] / counts_[axis]; }
  const std::array<double, 3>& lengths() const { return lengths_; }
  const std::array<int, 3>& counts() const { return counts_; }
  std::size_t size() const {
    return static_cast<std::size_t>(counts_[0]) * counts_[1] * (dim_ == 3 ? counts_[2] : 1);
  }
  double cell_volume() const;
  double volume() const;

  std::size_t index(int i, int j, int k = 0) const {
    const int nz = dim_ == 3 ? counts_[2] : 1;
    return (static_cast<std::size_t>(wrap(i, 0)) * counts_[1] + wrap(j, 1)) * nz +
           (dim_ == 3 ? wrap(k, 2) : 0);
  }
  /// Periodic wrap of an integer node index.
  int wrap(int i, int axis) const {
    const int n = counts_[axis];
    const int r = i % n;
    return r < 0 ? r + n : r;
  }
  Vec3 node(std::size_t flat) const;
  std::array<int, 3> multi_index(std::size_t flat) const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

private:
  int dim_ = 2;
  std::array<double, 3> lengths_{kTwoPi, kTwoPi, 1.0};
  std::array<int, 3> counts_{8, 8, 1};
};

}  // namespace driftkin
