#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "driftkin/poisson/grid_field.hpp"

namespace driftkin {

/// Real-to-complex transforms on a torus grid (FFTW plans behind the scenes).
///
/// Each instance owns its plans and scratch buffers; instances are not
/// shared between threads. Plan creation is serialized internally.
class SpectralOps {
public:
  explicit SpectralOps(const TorusGrid& grid);
  ~SpectralOps();
  SpectralOps(const SpectralOps&) = delete;
  SpectralOps& operator=(const SpectralOps&) = delete;
  SpectralOps(SpectralOps&&) noexcept;
  SpectralOps& operator=(SpectralOps&&) noexcept;

  const TorusGrid& grid() const { return grid_; }
  /// Number of complex coefficients of the half spectrum.
  std::size_t spectral_size() const { return spectral_size_; }

  /// Unnormalized forward transform.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  /// Inverse transform including the 1/N normalization. `in` is clobbered.
  void inverse(std::span<std::complex<double>> in, std::span<double> out);

  /// Wavenumber 2 pi m / L of half-spectrum entry `k` along `axis`.
  double wavenumber(std::size_t k, int axis) const;
  bool is_nyquist(std::size_t k, int axis) const;
  /// |k|^2 of half-spectrum entry `k`.
  double wavenumber_squared(std::size_t k) const;

  /// d/dx_axis by spectral multiplication; the Nyquist mode is dropped.
  std::vector<double> derivative(std::span<const double> values, int axis);
  void derivative(std::span<const double> values, int axis, std::span<double> out);
  VectorField gradient(const ScalarField& f);

private:
  void multi_index(std::size_t k, int idx[3]) const;

  TorusGrid grid_;
  std::size_t spectral_size_ = 0;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace driftkin
