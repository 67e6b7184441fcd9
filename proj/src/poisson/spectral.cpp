#include "driftkin/poisson/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

namespace driftkin {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SpectralOps::Plans {
  double* real = nullptr;
  fftw_complex* complex = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(complex);
  }
};

SpectralOps::SpectralOps(const TorusGrid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  int dims[3] = {grid.count(0), grid.count(1), grid.count(2)};
  const int rank = grid.dimension();
  spectral_size_ = grid.size() / dims[rank - 1] * (dims[rank - 1] / 2 + 1);

  std::lock_guard lock(planner_mutex());
  plans_->real = fftw_alloc_real(grid.size());
  plans_->complex = fftw_alloc_complex(spectral_size_);
  plans_->forward =
      fftw_plan_dft_r2c(rank, dims, plans_->real, plans_->complex, FFTW_ESTIMATE);
  plans_->backward =
      fftw_plan_dft_c2r(rank, dims, plans_->complex, plans_->real, FFTW_ESTIMATE);
}

SpectralOps::~SpectralOps() = default;
SpectralOps::SpectralOps(SpectralOps&&) noexcept = default;
SpectralOps& SpectralOps::operator=(SpectralOps&&) noexcept = default;

void SpectralOps::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  std::copy(in.begin(), in.end(), plans_->real);
  fftw_execute(plans_->forward);
  std::memcpy(static_cast<void*>(out.data()), plans_->complex,
              spectral_size_ * sizeof(fftw_complex));
}

void SpectralOps::inverse(std::span<std::complex<double>> in, std::span<double> out) {
  std::memcpy(plans_->complex, static_cast<const void*>(in.data()),
              spectral_size_ * sizeof(fftw_complex));
  fftw_execute(plans_->backward);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = plans_->real[i] * scale;
}

void SpectralOps::multi_index(std::size_t k, int idx[3]) const {
  const int rank = grid_.dimension();
  const std::size_t last = grid_.count(rank - 1) / 2 + 1;
  if (rank == 3) {
    idx[2] = static_cast<int>(k % last);
    k /= last;
    idx[1] = static_cast<int>(k % grid_.count(1));
    idx[0] = static_cast<int>(k / grid_.count(1));
  } else {
    idx[1] = static_cast<int>(k % last);
    idx[0] = static_cast<int>(k / last);
    idx[2] = 0;
  }
}

double SpectralOps::wavenumber(std::size_t k, int axis) const {
  int idx[3];
  multi_index(k, idx);
  const int n = grid_.count(axis);
  const int m = idx[axis] <= n / 2 ? idx[axis] : idx[axis] - n;
  return kTwoPi * m / grid_.length(axis);
}

bool SpectralOps::is_nyquist(std::size_t k, int axis) const {
  int idx[3];
  multi_index(k, idx);
  return idx[axis] == grid_.count(axis) / 2;
}

double SpectralOps::wavenumber_squared(std::size_t k) const {
  double k2 = 0.0;
  for (int a = 0; a < grid_.dimension(); ++a) {
    const double ka = wavenumber(k, a);
    k2 += ka * ka;
  }
  return k2;
}

void SpectralOps::derivative(std::span<const double> values, int axis, std::span<double> out) {
  std::copy(values.begin(), values.end(), plans_->real);
  fftw_execute(plans_->forward);
  for (std::size_t k = 0; k < spectral_size_; ++k) {
    const double ka = is_nyquist(k, axis) ? 0.0 : wavenumber(k, axis);
    const double re = plans_->complex[k][0];
    const double im = plans_->complex[k][1];
    // i k (re + i im) = -k im + i k re
    plans_->complex[k][0] = -ka * im;
    plans_->complex[k][1] = ka * re;
  }
  fftw_execute(plans_->backward);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = plans_->real[i] * scale;
}

std::vector<double> SpectralOps::derivative(std::span<const double> values, int axis) {
  std::vector<double> out(values.size());
  derivative(values, axis, out);
  return out;
}

VectorField SpectralOps::gradient(const ScalarField& f) {
  VectorField g(grid_);
  for (int a = 0; a < grid_.dimension(); ++a) derivative(f.values, a, g[a]);
  return g;
}

}  // namespace driftkin
