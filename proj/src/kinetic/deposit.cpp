#include "driftkin/kinetic/deposit.hpp"

#include <cmath>

#include "driftkin/parallel.hpp"

namespace driftkin::kinetic {

namespace {

constexpr int kDepositChunks = 16;

struct Stencil {
  std::size_t node[8];
  double weight[8];
  int count;
};

Stencil cic(const TorusGrid& grid, double x, double y, double z) {
  Stencil s{};
  const int dim = grid.dimension();
  const double coord[3] = {x, y, z};
  int lo[3] = {0, 0, 0};
  double frac[3] = {0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    const double u = coord[a] / grid.spacing(a);
    const double f = std::floor(u);
    lo[a] = static_cast<int>(f);
    frac[a] = u - f;
  }
  s.count = dim == 3 ? 8 : 4;
  for (int c = 0; c < s.count; ++c) {
    const int di = (c >> 0) & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
    double w = (di ? frac[0] : 1.0 - frac[0]) * (dj ? frac[1] : 1.0 - frac[1]);
    if (dim == 3) w *= dk ? frac[2] : 1.0 - frac[2];
    s.node[c] = grid.index(lo[0] + di, lo[1] + dj, lo[2] + dk);
    s.weight[c] = w;
  }
  return s;
}

}  // namespace

ScalarField deposit_charge(const ParticleEnsemble& ens, const TorusGrid& grid, int threads) {
  const std::size_t n = grid.size();
  std::vector<std::vector<double>> partial(kDepositChunks, std::vector<double>(n, 0.0));
  parallel_chunks(ens.size(), kDepositChunks, threads, [&](int c, std::size_t lo, std::size_t hi) {
    auto& acc = partial[c];
    for (std::size_t i = lo; i < hi; ++i) {
      const Stencil s = cic(grid, ens.x[i], ens.y[i], ens.z[i]);
      for (int k = 0; k < s.count; ++k) acc[s.node[k]] += ens.weight[i] * s.weight[k];
    }
  });
  ScalarField rho(grid);
  const double inv_cell = 1.0 / grid.cell_volume();
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (int c = 0; c < kDepositChunks; ++c) v += partial[c][i];
    rho.values[i] = v * inv_cell;
  }
  return rho;
}

std::array<std::vector<double>, 3> gather_field(const VectorField& field,
                                                const ParticleEnsemble& ens, int threads) {
  const TorusGrid& grid = field.grid;
  const int dim = grid.dimension();
  std::array<std::vector<double>, 3> out;
  for (auto& c : out) c.assign(ens.size(), 0.0);
  parallel_chunks(ens.size(), std::max(1, threads), threads,
                  [&](int, std::size_t lo, std::size_t hi) {
                    for (std::size_t i = lo; i < hi; ++i) {
                      const Stencil s = cic(grid, ens.x[i], ens.y[i], ens.z[i]);
                      for (int a = 0; a < dim; ++a) {
                        const auto& comp = field.components[a];
                        double v = 0.0;
                        for (int k = 0; k < s.count; ++k) v += s.weight[k] * comp[s.node[k]];
                        out[a][i] = v;
                      }
                    }
                  });
  return out;
}

}  // namespace driftkin::kinetic
