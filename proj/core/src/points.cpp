#include "stsim/points.h"

#include <algorithm>
#include <stdexcept>

namespace stsim {

std::size_t GridSpec::num_points() const {
  std::size_t n = static_cast<std::size_t>(nt);
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

SpaceTimePointSet::SpaceTimePointSet(int k, std::vector<double> spatial_coords,
                                     std::vector<double> time_coords)
    : k_(k), coords_(std::move(spatial_coords)), times_(std::move(time_coords)) {
  if (k_ < 1) throw std::invalid_argument("point set: k must be >= 1");
  if (times_.empty()) throw std::invalid_argument("point set: n must be >= 1");
  if (coords_.size() != times_.size() * static_cast<std::size_t>(k_))
    throw std::invalid_argument("point set: coordinate/time size mismatch");
}

SpaceTimePointSet SpaceTimePointSet::from_grid(const GridSpec& grid) {
  const int k = grid.dim();
  if (k < 1 || grid.origin.size() != grid.counts.size() ||
      grid.mesh.size() != grid.counts.size())
    throw std::invalid_argument("grid: origin/mesh/counts must share dimension");
  for (int c : grid.counts)
    if (c < 1) throw std::invalid_argument("grid: counts must be >= 1");
  for (double m : grid.mesh)
    if (!(m > 0.0)) throw std::invalid_argument("grid: mesh must be > 0");
  if (grid.nt < 1) throw std::invalid_argument("grid: nt must be >= 1");

  const std::size_t n = grid.num_points();
  std::vector<double> coords;
  std::vector<double> times;
  coords.reserve(n * k);
  times.reserve(n);

  std::vector<int> idx(k, 0);
  for (int it = 0; it < grid.nt; ++it) {
    const double t = grid.t0 + grid.dt * it;
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      for (int d = 0; d < k; ++d)
        coords.push_back(grid.origin[d] + grid.mesh[d] * idx[d]);
      times.push_back(t);
      // odometer increment, first axis fastest
      int d = 0;
      while (d < k && ++idx[d] == grid.counts[d]) idx[d++] = 0;
      if (d == k) break;
    }
  }
  SpaceTimePointSet ps(k, std::move(coords), std::move(times));
  ps.grid_ = grid;
  return ps;
}

std::vector<double> SpaceTimePointSet::distinct_times() const {
  std::vector<double> ts = times_;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

} // namespace stsim
