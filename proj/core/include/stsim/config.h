#ifndef STSIM_CONFIG_H
#define STSIM_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stsim/model.h"
#include "stsim/points.h"

namespace stsim {

struct MixtureConfig {
  std::string kind; // dirac | sqrt_gamma_half | tabulated
  double r = 0.0;
  double c = 0.0;
  std::vector<std::pair<double, double>> atoms;
};

struct VariogramConfig {
  std::string family; // linear | fractional_power | logarithmic | cauchy | table
  double b = 0.0;
  double a = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double param = 1.0;   // exponent for the "power" table entry
  std::string id;       // table entry id
  bool shot_noise = false; // opt into the generic shot-noise sampler
};

struct OutputConfig {
  std::string dir = ".";
  std::string format = "csv"; // csv | raw
  std::string prefix = "field";
};

/// Everything a simulation run needs; fully validated before any
/// simulation starts.
struct RunConfig {
  int k = 2;
  MixtureConfig mixture;
  VariogramConfig variogram;
  std::string method = "spectral"; // spectral | substitution
  int p = 1000;
  std::optional<GridSpec> grid;
  std::vector<double> point_coords; // row-major, used when no grid
  std::vector<double> point_times;
  std::vector<double> instants; // explicit time instants (substitution)
  std::uint64_t seed = 0;
  double eps = 0.01; // shot-noise truncation level
  int realizations = 1;
  OutputConfig output;
};

/// Carries every validation problem found in a config, not just the first.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

private:
  std::vector<std::string> errors_;
};

/// Parses and validates a JSON run config. Throws ConfigError listing
/// every invalid field.
RunConfig parse_config(const std::string& text);

GneitingModel make_model(const RunConfig& cfg);
SpaceTimePointSet make_points(const RunConfig& cfg);

/// Time instants for the substitution method: the explicit list if given,
/// otherwise the grid's time slices.
std::vector<double> simulation_instants(const RunConfig& cfg);

} // namespace stsim

#endif
