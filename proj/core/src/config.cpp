#include "stsim/config.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace stsim {

namespace {

using nlohmann::json;

std::string join_errors(const std::vector<std::string>& errors) {
  std::ostringstream os;
  os << "invalid config:";
  for (const std::string& e : errors) os << "\n  - " << e;
  return os.str();
}

class Collector {
public:
  explicit Collector(std::vector<std::string>& errors) : errors_(errors) {}

  void add(const std::string& msg) { errors_.push_back(msg); }

  // typed fetch; records an error and returns fallback on absence/mismatch
  template <typename T>
  T get(const json& j, const std::string& path, const std::string& key,
        T fallback, bool required) {
    if (!j.contains(key)) {
      if (required) add(path + key + ": missing required field");
      return fallback;
    }
    try {
      return j.at(key).get<T>();
    } catch (const json::exception&) {
      add(path + key + ": wrong type");
      return fallback;
    }
  }

private:
  std::vector<std::string>& errors_;
};

void parse_mixture(const json& j, MixtureConfig& m, Collector& errs) {
  m.kind = errs.get<std::string>(j, "model.mixture.", "kind", "", true);
  if (m.kind == "dirac") {
    m.r = errs.get<double>(j, "model.mixture.", "r", 0.0, true);
    if (!(m.r > 0.0))
      errs.add("model.mixture.r: must be > 0 (legal range (0, inf))");
  } else if (m.kind == "sqrt_gamma_half") {
    m.c = errs.get<double>(j, "model.mixture.", "c", 0.0, true);
    if (!(m.c > 0.0))
      errs.add("model.mixture.c: must be > 0 (legal range (0, inf))");
  } else if (m.kind == "tabulated") {
    if (!j.contains("atoms") || !j.at("atoms").is_array() ||
        j.at("atoms").empty()) {
      errs.add("model.mixture.atoms: required non-empty array of [r, weight]");
      return;
    }
    double total = 0.0;
    for (const json& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() ||
          !a[1].is_number()) {
        errs.add("model.mixture.atoms: entries must be [r, weight] pairs");
        return;
      }
      const double r = a[0].get<double>();
      const double w = a[1].get<double>();
      if (r < 0.0) errs.add("model.mixture.atoms: r must be >= 0");
      if (!(w > 0.0)) errs.add("model.mixture.atoms: weights must be > 0");
      total += w;
      m.atoms.emplace_back(r, w);
    }
    if (std::abs(total - 1.0) > 1e-12)
      errs.add("model.mixture.atoms: weights must sum to 1");
  } else if (!m.kind.empty()) {
    errs.add("model.mixture.kind: unknown kind '" + m.kind +
             "' (dirac | sqrt_gamma_half | tabulated)");
  }
}

void parse_variogram(const json& j, VariogramConfig& v, Collector& errs) {
  v.family = errs.get<std::string>(j, "model.variogram.", "family", "", true);
  if (v.family == "linear") {
    v.b = errs.get<double>(j, "model.variogram.", "b", 0.0, true);
    if (!(v.b > 0.0))
      errs.add("model.variogram.b: must be > 0 (legal range (0, inf))");
  } else if (v.family == "fractional_power") {
    v.alpha = errs.get<double>(j, "model.variogram.", "alpha", 0.0, true);
    if (!(v.alpha > 0.0 && v.alpha < 2.0))
      errs.add("model.variogram.alpha: legal range (0, 2)");
  } else if (v.family == "logarithmic") {
    v.a = errs.get<double>(j, "model.variogram.", "a", 0.0, true);
    if (!(v.a > 1.0))
      errs.add("model.variogram.a: must be > 1 (legal range (1, inf))");
  } else if (v.family == "cauchy") {
    v.a = errs.get<double>(j, "model.variogram.", "a", 0.0, true);
    v.alpha = errs.get<double>(j, "model.variogram.", "alpha", 0.0, true);
    v.beta = errs.get<double>(j, "model.variogram.", "beta", 0.0, true);
    if (!(v.a > 0.0)) errs.add("model.variogram.a: must be > 0");
    if (!(v.alpha > 0.0 && v.alpha <= 2.0))
      errs.add("model.variogram.alpha: legal range (0, 2]");
    if (!(v.beta > 0.0 && v.beta <= 1.0))
      errs.add("model.variogram.beta: legal range (0, 1]");
  } else if (v.family == "table") {
    v.id = errs.get<std::string>(j, "model.variogram.", "id", "", true);
    v.param = errs.get<double>(j, "model.variogram.", "param", 1.0, false);
    const auto& ids = VariogramSpec::table_ids();
    if (std::find(ids.begin(), ids.end(), v.id) == ids.end())
      errs.add("model.variogram.id: unknown table entry '" + v.id + "'");
    else if (v.id == "power" && !(v.param > 0.0 && v.param < 2.0))
      errs.add("model.variogram.param: legal range (0, 2) for 'power'");
  } else if (!v.family.empty()) {
    errs.add("model.variogram.family: unknown family '" + v.family +
             "' (linear | fractional_power | logarithmic | cauchy | table)");
  }
  v.shot_noise = errs.get<bool>(j, "model.variogram.", "shot_noise", false, false);
  if (v.shot_noise && v.family != "logarithmic")
    errs.add("model.variogram.shot_noise: only available for the logarithmic family");
}

void parse_grid(const json& j, int k, std::optional<GridSpec>& out,
                Collector& errs) {
  GridSpec g;
  g.origin = errs.get<std::vector<double>>(j, "grid.", "origin",
                                           std::vector<double>(k, 0.0), false);
  g.mesh = errs.get<std::vector<double>>(j, "grid.", "mesh", {}, true);
  g.counts = errs.get<std::vector<int>>(j, "grid.", "counts", {}, true);
  g.t0 = errs.get<double>(j, "grid.", "t0", 0.0, false);
  g.dt = errs.get<double>(j, "grid.", "dt", 1.0, false);
  g.nt = errs.get<int>(j, "grid.", "nt", 1, false);

  bool ok = true;
  if (static_cast<int>(g.origin.size()) != k ||
      static_cast<int>(g.mesh.size()) != k ||
      static_cast<int>(g.counts.size()) != k) {
    errs.add("grid: origin/mesh/counts must each have k entries");
    ok = false;
  }
  for (double m : g.mesh)
    if (!(m > 0.0)) {
      errs.add("grid.mesh: entries must be > 0");
      ok = false;
      break;
    }
  for (int c : g.counts)
    if (c < 1) {
      errs.add("grid.counts: entries must be >= 1");
      ok = false;
      break;
    }
  if (g.nt < 1) {
    errs.add("grid.nt: must be >= 1");
    ok = false;
  }
  if (!(g.dt > 0.0)) {
    errs.add("grid.dt: must be > 0");
    ok = false;
  }
  if (ok) out = std::move(g);
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }

  std::vector<std::string> errors;
  Collector errs(errors);
  RunConfig cfg;

  cfg.k = errs.get<int>(j, "", "k", 2, false);
  if (cfg.k < 1) errs.add("k: must be >= 1");

  if (!j.contains("model") || !j.at("model").is_object()) {
    errs.add("model: missing required section");
  } else {
    const json& m = j.at("model");
    if (m.contains("mixture") && m.at("mixture").is_object())
      parse_mixture(m.at("mixture"), cfg.mixture, errs);
    else
      errs.add("model.mixture: missing required section");
    if (m.contains("variogram") && m.at("variogram").is_object())
      parse_variogram(m.at("variogram"), cfg.variogram, errs);
    else
      errs.add("model.variogram: missing required section");
  }

  cfg.method = errs.get<std::string>(j, "", "method", "spectral", false);
  if (cfg.method != "spectral" && cfg.method != "substitution")
    errs.add("method: must be 'spectral' or 'substitution'");

  cfg.p = errs.get<int>(j, "", "p", 1000, false);
  if (cfg.p < 1) errs.add("p: must be >= 1");

  if (j.contains("grid") && j.contains("points"))
    errs.add("grid/points: give one of them, not both");
  if (j.contains("grid")) {
    if (j.at("grid").is_object())
      parse_grid(j.at("grid"), cfg.k, cfg.grid, errs);
    else
      errs.add("grid: must be an object");
  } else if (j.contains("points")) {
    const json& p = j.at("points");
    cfg.point_coords =
        errs.get<std::vector<double>>(p, "points.", "coords", {}, true);
    cfg.point_times =
        errs.get<std::vector<double>>(p, "points.", "times", {}, true);
    if (cfg.point_times.empty())
      errs.add("points.times: must be non-empty");
    else if (cfg.point_coords.size() !=
             cfg.point_times.size() * static_cast<std::size_t>(cfg.k))
      errs.add("points.coords: length must be k * len(times)");
  } else {
    errs.add("grid/points: one evaluation target is required");
  }

  cfg.instants = errs.get<std::vector<double>>(j, "", "instants", {}, false);
  cfg.seed = errs.get<std::uint64_t>(j, "", "seed", 0, false);
  cfg.eps = errs.get<double>(j, "", "eps", 0.01, false);
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) errs.add("eps: legal range (0, 1)");
  cfg.realizations = errs.get<int>(j, "", "realizations", 1, false);
  if (cfg.realizations < 1) errs.add("realizations: must be >= 1");

  if (j.contains("output") && j.at("output").is_object()) {
    const json& o = j.at("output");
    cfg.output.dir = errs.get<std::string>(o, "output.", "dir", ".", false);
    cfg.output.format =
        errs.get<std::string>(o, "output.", "format", "csv", false);
    cfg.output.prefix =
        errs.get<std::string>(o, "output.", "prefix", "field", false);
    if (cfg.output.format != "csv" && cfg.output.format != "raw")
      errs.add("output.format: must be 'csv' or 'raw'");
  }

  // cross-field rules
  if (cfg.method == "substitution" && cfg.instants.empty() && !cfg.grid)
    errs.add("instants: required for method=substitution without a grid");
  const bool atom_at_zero =
      cfg.mixture.kind == "tabulated" &&
      std::any_of(cfg.mixture.atoms.begin(), cfg.mixture.atoms.end(),
                  [](const auto& a) { return a.first == 0.0; });
  if (cfg.method == "spectral" && atom_at_zero)
    errs.add("model.mixture.atoms: atom at r=0 is not usable with method=spectral");

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

GneitingModel make_model(const RunConfig& cfg) {
  MixtureMeasure mu = [&] {
    if (cfg.mixture.kind == "dirac") return MixtureMeasure::dirac(cfg.mixture.r);
    if (cfg.mixture.kind == "sqrt_gamma_half")
      return MixtureMeasure::sqrt_gamma_half(cfg.mixture.c);
    return MixtureMeasure::tabulated(cfg.mixture.atoms);
  }();
  VariogramSpec gamma = [&] {
    if (cfg.variogram.family == "linear")
      return VariogramSpec::linear(cfg.variogram.b);
    if (cfg.variogram.family == "fractional_power")
      return VariogramSpec::fractional_power(cfg.variogram.alpha);
    if (cfg.variogram.family == "logarithmic")
      return VariogramSpec::logarithmic(cfg.variogram.a);
    if (cfg.variogram.family == "cauchy")
      return VariogramSpec::cauchy(cfg.variogram.a, cfg.variogram.alpha,
                                   cfg.variogram.beta);
    return VariogramSpec::table_entry(cfg.variogram.id, cfg.variogram.param);
  }();
  if (cfg.variogram.shot_noise)
    gamma.set_strategy(SamplerStrategy::ShotNoiseGeneric);
  return GneitingModel(cfg.k, std::move(mu), std::move(gamma));
}

SpaceTimePointSet make_points(const RunConfig& cfg) {
  if (cfg.grid) return SpaceTimePointSet::from_grid(*cfg.grid);
  return SpaceTimePointSet(cfg.k, cfg.point_coords, cfg.point_times);
}

std::vector<double> simulation_instants(const RunConfig& cfg) {
  if (!cfg.instants.empty()) return cfg.instants;
  if (cfg.grid) {
    std::vector<double> out(cfg.grid->nt);
    for (int i = 0; i < cfg.grid->nt; ++i) out[i] = cfg.grid->t0 + cfg.grid->dt * i;
    return out;
  }
  return {};
}

} // namespace stsim
