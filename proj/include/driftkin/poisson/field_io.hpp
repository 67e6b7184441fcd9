#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "driftkin/poisson/grid_field.hpp"

namespace driftkin::io {

/// CSV with header `i,j[,k],x,y[,z],value`.
void write_csv(const ScalarField& f, const std::filesystem::path& path);

/// Writes `<base>.bin` (little-endian float64, one block per component) and a
/// `<base>.json` header with dims, lengths, counts, components and the data file name.
void write_raw(const std::filesystem::path& base, const TorusGrid& grid,
               const std::vector<const std::vector<double>*>& components);
void write_raw(const ScalarField& f, const std::filesystem::path& base);
void write_raw(const VectorField& f, const std::filesystem::path& base);

/// Reads a scalar field written by write_raw.
ScalarField read_raw_scalar(const std::filesystem::path& base);

}  // namespace driftkin::io
