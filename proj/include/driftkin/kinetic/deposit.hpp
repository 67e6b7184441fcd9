#pragma once

#include <array>
#include <vector>

#include "driftkin/kinetic/particles.hpp"
#include "driftkin/poisson/grid_field.hpp"

namespace driftkin::kinetic {

/// Cloud-in-cell charge density: the node sum times the cell volume equals
/// the total weight. Partial grids are merged in a fixed order, so the result
/// does not depend on `threads`.
ScalarField deposit_charge(const ParticleEnsemble& ens, const TorusGrid& grid, int threads = 1);

/// Cloud-in-cell interpolation of the first grid.dimension() field
/// components to the particles (the same weights as the deposit). Missing
/// components are zero.
std::array<std::vector<double>, 3> gather_field(const VectorField& field,
                                                const ParticleEnsemble& ens, int threads = 1);

}  // namespace driftkin::kinetic
