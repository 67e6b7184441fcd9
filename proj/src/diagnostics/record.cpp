#include "driftkin/diagnostics/record.hpp"

#include <charconv>

#include "driftkin/error.hpp"

namespace driftkin::diag {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "t",      "s",     "kinetic_energy", "field_energy", "total_energy",
      "mass",   "L1",    "L2",             "Linf",         "min_value",
      "longitudinal_momentum_variation",   "constraint_residual",
      "defect_norm",    "drift_estimate_x", "drift_estimate_y"};
  return columns;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_row(const DiagnosticsRecord& r) {
  const double dx = r.drift_estimate ? r.drift_estimate->x : kAbsent;
  const double dy = r.drift_estimate ? r.drift_estimate->y : kAbsent;
  const double values[] = {r.t,    r.s,  r.kinetic_energy, r.field_energy, r.total_energy,
                           r.mass, r.l1, r.l2,             r.linf,         r.min_value,
                           r.longitudinal_momentum_variation,
                           r.constraint_residual, r.defect_norm, dx, dy};
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += format_double(v);
  }
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  out_ << csv_header() << '\n';
}

void CsvWriter::write(const DiagnosticsRecord& r) { out_ << csv_row(r) << '\n'; }

void write_csv(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path) {
  CsvWriter w(path);
  for (const auto& r : records) w.write(r);
}

}  // namespace driftkin::diag
