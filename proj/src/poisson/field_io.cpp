#include "driftkin/poisson/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "driftkin/error.hpp"

namespace driftkin::io {

namespace {

void write_le_doubles(std::ofstream& out, const std::vector<double>& data) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
  } else {
    for (double v : data) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      unsigned char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
      out.write(reinterpret_cast<const char*>(bytes), 8);
    }
  }
}

std::filesystem::path with_suffix(const std::filesystem::path& base, const char* ext) {
  return std::filesystem::path(base.string() + ext);
}

}  // namespace

void write_csv(const ScalarField& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  const bool three = f.grid.dimension() == 3;
  out << (three ? "i,j,k,x,y,z,value\n" : "i,j,x,y,value\n");
  out.precision(17);
  for (std::size_t n = 0; n < f.size(); ++n) {
    const auto m = f.grid.multi_index(n);
    const Vec3 p = f.grid.node(n);
    out << m[0] << ',' << m[1] << ',';
    if (three) out << m[2] << ',';
    out << p.x << ',' << p.y << ',';
    if (three) out << p.z << ',';
    out << f.values[n] << '\n';
  }
}

void write_raw(const std::filesystem::path& base, const TorusGrid& grid,
               const std::vector<const std::vector<double>*>& components) {
  const auto bin = with_suffix(base, ".bin");
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw Error("cannot open " + bin.string() + " for writing");
  for (const auto* c : components) write_le_doubles(out, *c);

  nlohmann::json header;
  header["dims"] = grid.dimension();
  header["lengths"] = std::vector<double>(grid.lengths().begin(),
                                          grid.lengths().begin() + grid.dimension());
  header["counts"] =
      std::vector<int>(grid.counts().begin(), grid.counts().begin() + grid.dimension());
  header["components"] = components.size();
  header["dtype"] = "float64-le";
  header["order"] = "row-major, last axis fastest";
  header["data"] = bin.filename().string();
  std::ofstream js(with_suffix(base, ".json"));
  js << header.dump(2) << '\n';
}

void write_raw(const ScalarField& f, const std::filesystem::path& base) {
  write_raw(base, f.grid, {&f.values});
}

void write_raw(const VectorField& f, const std::filesystem::path& base) {
  std::vector<const std::vector<double>*> comps;
  for (int a = 0; a < f.grid.dimension(); ++a) comps.push_back(&f.components[a]);
  write_raw(base, f.grid, comps);
}

ScalarField read_raw_scalar(const std::filesystem::path& base) {
  std::ifstream js(with_suffix(base, ".json"));
  if (!js) throw Error("missing header " + with_suffix(base, ".json").string());
  const auto header = nlohmann::json::parse(js);
  const int dims = header.at("dims").get<int>();
  std::array<double, 3> lengths{1.0, 1.0, 1.0};
  std::array<int, 3> counts{1, 1, 1};
  for (int a = 0; a < dims; ++a) {
    lengths[a] = header.at("lengths")[a].get<double>();
    counts[a] = header.at("counts")[a].get<int>();
  }
  ScalarField f(TorusGrid(dims, lengths, counts));
  const auto bin = base.parent_path() / header.at("data").get<std::string>();
  std::ifstream in(bin, std::ios::binary);
  std::vector<unsigned char> bytes(f.size() * 8);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!in) throw DataError("truncated raw field " + bin.string());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[8 * i + b]) << (8 * b);
    f.values[i] = std::bit_cast<double>(bits);
  }
  return f;
}

}  // namespace driftkin::io
