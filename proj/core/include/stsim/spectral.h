#ifndef STSIM_SPECTRAL_H
#define STSIM_SPECTRAL_H

#include <cstdint>
#include <vector>

#include "stsim/model.h"
#include "stsim/points.h"
#include "stsim/rng.h"

namespace stsim {

/// Derive a child seed from a master seed, for per-realization streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// One cosine wave: amp/sqrt(p) * cos(<omega, x> + tau t + phi).
struct SpectralComponent {
  std::vector<double> omega; // k spatial frequencies
  double tau = 0.0;          // temporal frequency
  double phi = 0.0;          // phase in (0, 2pi)
  double amp = 0.0;          // sqrt(-2 ln U) > 0
};

struct SpectralEnsemble {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<SpectralComponent> components;
  int p() const { return static_cast<int>(components.size()); }
};

/// Spatial frequency given the mixture scale r: k i.i.d. N(0, 2r)
/// coordinates. r = 0 is rejected on this path.
std::vector<double> sample_spatial_frequency(double r, int k, RngStream& rng);

/// Conditional temporal frequency with characteristic function
/// exp(-lambda gamma(u)), lambda = |omega|^2 / (4r). Dispatches on the
/// variogram's sampler strategy; lambda = 0 short-circuits to 0.
/// eps is the shot-noise truncation level.
double sample_temporal_frequency(double lambda, const VariogramSpec& spec,
                                 double eps, RngStream& rng);

/// Build p independent cosine components; component j consumes the
/// stream (seed, j), j = 1..p, so builds parallelize and reproduce.
SpectralEnsemble build_spectral_ensemble(const GneitingModel& model, int p,
                                         std::uint64_t seed, double eps = 0.01);

/// Evaluate the cosine sum at every point. O(n p); deterministic given
/// the ensemble, also across thread counts.
FieldRealization evaluate_spectral(const SpectralEnsemble& ensemble,
                                   const SpaceTimePointSet& points,
                                   int n_threads = 1);

} // namespace stsim

#endif
