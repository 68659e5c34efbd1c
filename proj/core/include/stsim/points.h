#ifndef STSIM_POINTS_H
#define STSIM_POINTS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stsim {

/// Regular space-time grid. Points expand in row-major order with time
/// slowest, then the last spatial axis, the first spatial axis fastest.
struct GridSpec {
  std::vector<double> origin; // k values
  std::vector<double> mesh;   // k values, all > 0
  std::vector<int> counts;    // k values, all >= 1
  double t0 = 0.0;
  double dt = 1.0;
  int nt = 1;

  int dim() const { return static_cast<int>(counts.size()); }
  std::size_t num_points() const;
};

/// n space-time points in R^k x R. Spatial coordinates are stored
/// row-major (point-major).
class SpaceTimePointSet {
public:
  SpaceTimePointSet(int k, std::vector<double> spatial_coords,
                    std::vector<double> time_coords);
  static SpaceTimePointSet from_grid(const GridSpec& grid);

  int k() const { return k_; }
  std::size_t size() const { return times_.size(); }
  const double* point(std::size_t i) const { return coords_.data() + i * k_; }
  double time(std::size_t i) const { return times_[i]; }
  const std::vector<double>& spatial_coords() const { return coords_; }
  const std::vector<double>& time_coords() const { return times_; }
  const std::optional<GridSpec>& grid() const { return grid_; }

  /// Distinct time coordinates, sorted ascending.
  std::vector<double> distinct_times() const;

private:
  int k_;
  std::vector<double> coords_;
  std::vector<double> times_;
  std::optional<GridSpec> grid_;
};

struct Provenance {
  std::uint64_t seed = 0;
  std::string method;
  int p = 0;
  std::string model_tag;
  std::string version;
};

/// Simulated values on a point set, plus how they were produced.
struct FieldRealization {
  SpaceTimePointSet points;
  std::vector<double> values;
  Provenance provenance;
};

} // namespace stsim

#endif
