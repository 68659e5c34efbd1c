#include "stsim/field_io.h"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace stsim {

namespace {

using nlohmann::json;

std::uint64_t to_little_endian(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  if constexpr (std::endian::native == std::endian::big)
    bits = __builtin_bswap64(bits);
  return bits;
}

double from_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big)
    bits = __builtin_bswap64(bits);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

json provenance_json(const Provenance& p) {
  return json{{"seed", p.seed},
              {"method", p.method},
              {"p", p.p},
              {"model_tag", p.model_tag},
              {"version", p.version}};
}

Provenance provenance_from(const json& j) {
  Provenance p;
  p.seed = j.at("seed").get<std::uint64_t>();
  p.method = j.at("method").get<std::string>();
  p.p = j.at("p").get<int>();
  p.model_tag = j.at("model_tag").get<std::string>();
  p.version = j.at("version").get<std::string>();
  return p;
}

} // namespace

void write_field_csv(const FieldRealization& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);

  const int k = field.points.k();
  for (int d = 1; d <= k; ++d) out << 'x' << d << ',';
  out << "t,value\n";

  char buf[32];
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const double* x = field.points.point(i);
    for (int d = 0; d < k; ++d) {
      std::snprintf(buf, sizeof(buf), "%.17g", x[d]);
      out << buf << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", field.points.time(i));
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", field.values[i]);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_field_raw(const FieldRealization& field, const std::string& data_path,
                     const std::string& manifest_path) {
  std::ofstream out(data_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + data_path);
  for (double v : field.values) {
    const std::uint64_t bits = to_little_endian(v);
    out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!out) throw std::runtime_error("write failed: " + data_path);
  out.close();

  json man;
  man["byte_order"] = "little";
  man["dtype"] = "float64";
  man["count"] = field.values.size();
  man["k"] = field.points.k();
  man["provenance"] = provenance_json(field.provenance);
  if (field.points.grid()) {
    const GridSpec& g = *field.points.grid();
    man["grid"] = json{{"origin", g.origin}, {"mesh", g.mesh},
                       {"counts", g.counts}, {"t0", g.t0},
                       {"dt", g.dt},         {"nt", g.nt}};
  } else {
    man["points"] = json{{"coords", field.points.spatial_coords()},
                         {"times", field.points.time_coords()}};
  }

  std::ofstream mo(manifest_path);
  if (!mo) throw std::runtime_error("cannot open manifest file: " + manifest_path);
  mo << man.dump(2) << '\n';
  if (!mo) throw std::runtime_error("write failed: " + manifest_path);
}

FieldRealization read_field_raw(const std::string& data_path,
                                const std::string& manifest_path) {
  std::ifstream mi(manifest_path);
  if (!mi) throw std::runtime_error("cannot open manifest file: " + manifest_path);
  json man;
  try {
    mi >> man;
  } catch (const json::exception& e) {
    throw std::runtime_error("bad manifest " + manifest_path + ": " + e.what());
  }
  if (man.at("byte_order") != "little" || man.at("dtype") != "float64")
    throw std::runtime_error("unsupported raw layout in " + manifest_path);

  const std::size_t count = man.at("count").get<std::size_t>();
  const int k = man.at("k").get<int>();

  auto points = [&]() -> SpaceTimePointSet {
    if (man.contains("grid")) {
      const json& g = man.at("grid");
      GridSpec spec;
      spec.origin = g.at("origin").get<std::vector<double>>();
      spec.mesh = g.at("mesh").get<std::vector<double>>();
      spec.counts = g.at("counts").get<std::vector<int>>();
      spec.t0 = g.at("t0").get<double>();
      spec.dt = g.at("dt").get<double>();
      spec.nt = g.at("nt").get<int>();
      return SpaceTimePointSet::from_grid(spec);
    }
    const json& p = man.at("points");
    return SpaceTimePointSet(k, p.at("coords").get<std::vector<double>>(),
                             p.at("times").get<std::vector<double>>());
  }();
  if (points.size() != count)
    throw std::runtime_error("manifest count does not match geometry: " +
                             manifest_path);

  std::ifstream in(data_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open data file: " + data_path);
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits;
    if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits))
      throw std::runtime_error("raw file truncated: " + data_path);
    values[i] = from_little_endian(bits);
  }

  FieldRealization field{std::move(points), std::move(values),
                         provenance_from(man.at("provenance"))};
  return field;
}

} // namespace stsim
