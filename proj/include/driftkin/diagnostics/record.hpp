#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "driftkin/vec.hpp"

namespace driftkin::diag {

inline constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

struct EnergyParts {
  double kinetic = 0.0;
  double field = 0.0;
  double total = 0.0;
};

inline EnergyParts make_energy(double kinetic, double field) {
  return {kinetic, field, kinetic + field};
}

/// One time sample of the tracked invariants. Absent quantities are NaN.
struct DiagnosticsRecord {
  double t = 0.0;
  double s = kAbsent;
  double kinetic_energy = 0.0;
  double field_energy = 0.0;
  double total_energy = 0.0;
  double mass = 0.0;
  double l1 = kAbsent;
  double l2 = kAbsent;
  double linf = kAbsent;
  double min_value = kAbsent;
  double longitudinal_momentum_variation = kAbsent;
  double constraint_residual = kAbsent;
  double defect_norm = kAbsent;
  std::optional<Vec2> drift_estimate;

  void set_energy(const EnergyParts& e) {
    kinetic_energy = e.kinetic;
    field_energy = e.field;
    total_energy = e.kinetic + e.field;
  }
};

/// Column names in record field order.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const DiagnosticsRecord& r);
/// Shortest round-trip decimal; "nan" for NaN.
std::string format_double(double v);

/// Appends rows as they arrive; the header is written on open.
class CsvWriter {
public:
  explicit CsvWriter(const std::filesystem::path& path);
  void write(const DiagnosticsRecord& r);
  void flush() { out_.flush(); }

private:
  std::ofstream out_;
};

void write_csv(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path);

}  // namespace driftkin::diag
