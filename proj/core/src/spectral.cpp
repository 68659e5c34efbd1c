#include "stsim/spectral.h"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "lattice_eval.h"
#include "stsim/distributions.h"

namespace stsim {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> sample_spatial_frequency(double r, int k, RngStream& rng) {
  if (!(r > 0.0))
    throw std::invalid_argument(
        "spatial frequency: r must be > 0 (no atom at 0 on the spectral path)");
  return sample_gaussian_vector(k, 2.0 * r, rng);
}

double sample_temporal_frequency(double lambda, const VariogramSpec& spec,
                                 double eps, RngStream& rng) {
  if (lambda < 0.0)
    throw std::invalid_argument("temporal frequency: lambda must be >= 0");
  if (lambda == 0.0) return 0.0;

  switch (spec.strategy()) {
    case SamplerStrategy::DirectCauchy: {
      if (spec.family() != VariogramFamily::Linear)
        throw std::invalid_argument("DirectCauchy requires the linear variogram");
      const double scale = lambda * spec.param_b();
      return scale * std::tan(M_PI * (rng.uniform() - 0.5));
    }
    case SamplerStrategy::GammaMixture: {
      if (spec.family() != VariogramFamily::Logarithmic)
        throw std::invalid_argument("GammaMixture requires the logarithmic variogram");
      const double a2 = spec.param_a() * spec.param_a();
      const double shape = lambda / std::log(a2);
      const double x = sample_gamma(shape, a2, rng);
      return rng.normal() * std::sqrt(2.0 * x);
    }
    case SamplerStrategy::StableMixture: {
      if (spec.family() == VariogramFamily::CauchyClass) {
        const double a = spec.param_a();
        const double alpha = spec.param_alpha();
        const double beta = spec.param_beta();
        const double tilt = std::pow(lambda, 1.0 / beta);
        const double s = sample_tilted_unilateral_stable(beta, tilt, rng);
        const double t = sample_symmetric_stable(alpha, rng);
        return t * std::pow(s * a * tilt, 1.0 / alpha);
      }
      if (spec.family() == VariogramFamily::FractionalPower ||
          (spec.family() == VariogramFamily::TableEntry && spec.id() == "power")) {
        const double alpha = spec.param_alpha();
        return std::pow(lambda, 1.0 / alpha) * sample_symmetric_stable(alpha, rng);
      }
      throw std::invalid_argument("StableMixture not available for this variogram");
    }
    case SamplerStrategy::ShotNoiseGeneric: {
      if (spec.family() != VariogramFamily::Logarithmic)
        throw std::invalid_argument(
            "shot-noise sampling is implemented for the logarithmic variogram only");
      // Point process intensity lambda_eff / t on [a, inf), marks are
      // Laplace(rate T_n) draws; truncation keeps the discarded tail
      // below a fraction eps of the variance.
      const double a = spec.param_a();
      const double lambda_eff = lambda / std::log(a);
      const auto times = sample_poisson_times_logintensity(a, lambda_eff, eps, rng);
      double sum = 0.0;
      for (double tn : times) {
        const double mag = rng.exponential() / tn;
        sum += rng.uniform() < 0.5 ? -mag : mag;
      }
      return sum;
    }
    case SamplerStrategy::CompoundPoisson: {
      if (!spec.bounded())
        throw std::invalid_argument(
            "compound Poisson sampling requires a bounded variogram");
      const double intensity = lambda * spec.spectral_mass();
      return sample_compound_poisson(
          intensity, [&spec](RngStream& r) { return spec.jump_sample(r); }, rng);
    }
  }
  throw std::logic_error("unhandled sampler strategy");
}

SpectralEnsemble build_spectral_ensemble(const GneitingModel& model, int p,
                                         std::uint64_t seed, double eps) {
  if (p < 1) throw std::invalid_argument("spectral ensemble: p must be >= 1");
  if (model.mu().has_atom_at_zero())
    throw std::invalid_argument(
        "spectral ensemble: mixture measure must have no atom at 0");

  SpectralEnsemble ens;
  ens.k = model.k();
  ens.seed = seed;
  ens.components.resize(p);
  for (int j = 1; j <= p; ++j) {
    RngStream rng(seed, static_cast<std::uint64_t>(j));
    SpectralComponent& c = ens.components[j - 1];
    const double r = model.mu().sample(rng);
    c.omega = sample_spatial_frequency(r, model.k(), rng);
    double w2 = 0.0;
    for (double w : c.omega) w2 += w * w;
    const double lambda = w2 / (4.0 * r);
    c.tau = sample_temporal_frequency(lambda, model.gamma(), eps, rng);
    c.phi = rng.uniform(0.0, 2.0 * M_PI);
    c.amp = std::sqrt(-2.0 * std::log(rng.uniform()));
  }
  return ens;
}

namespace {

void evaluate_grid_slices(const SpectralEnsemble& ens, const GridSpec& grid,
                          double norm, int t_begin, int t_end, double* values) {
  const int k = ens.k;
  const std::size_t slice_size = grid.num_points() / grid.nt;
  std::vector<double> ang(k);
  for (int it = t_begin; it < t_end; ++it) {
    const double t = grid.t0 + grid.dt * it;
    double* slice = values + static_cast<std::size_t>(it) * slice_size;
    for (const SpectralComponent& c : ens.components) {
      double base = c.phi + c.tau * t;
      for (int d = 0; d < k; ++d) {
        base += c.omega[d] * grid.origin[d];
        ang[d] = c.omega[d] * grid.mesh[d];
      }
      detail::accumulate_cosine_lattice(grid.counts, ang, base, norm * c.amp,
                                        slice);
    }
  }
}

void evaluate_points_range(const SpectralEnsemble& ens,
                           const SpaceTimePointSet& pts, double norm,
                           std::size_t begin, std::size_t end, double* values) {
  const int k = ens.k;
  for (std::size_t i = begin; i < end; ++i) {
    const double* x = pts.point(i);
    const double t = pts.time(i);
    double acc = 0.0;
    for (const SpectralComponent& c : ens.components) {
      double angle = c.phi + c.tau * t;
      for (int d = 0; d < k; ++d) angle += c.omega[d] * x[d];
      acc += c.amp * std::cos(angle);
    }
    values[i] = norm * acc;
  }
}

} // namespace

FieldRealization evaluate_spectral(const SpectralEnsemble& ensemble,
                                   const SpaceTimePointSet& points,
                                   int n_threads) {
  if (points.k() != ensemble.k)
    throw std::invalid_argument("evaluate: point dimension does not match ensemble");
  if (n_threads < 1) n_threads = 1;

  const double norm = 1.0 / std::sqrt(static_cast<double>(ensemble.p()));
  std::vector<double> values(points.size(), 0.0);

  if (points.grid()) {
    const GridSpec& grid = *points.grid();
    if (n_threads == 1 || grid.nt == 1) {
      evaluate_grid_slices(ensemble, grid, norm, 0, grid.nt, values.data());
    } else {
      std::vector<std::thread> workers;
      const int chunk = (grid.nt + n_threads - 1) / n_threads;
      for (int w = 0; w < n_threads; ++w) {
        const int b = w * chunk;
        const int e = std::min(grid.nt, b + chunk);
        if (b >= e) break;
        workers.emplace_back(evaluate_grid_slices, std::cref(ensemble),
                             std::cref(grid), norm, b, e, values.data());
      }
      for (auto& th : workers) th.join();
    }
  } else {
    if (n_threads == 1) {
      evaluate_points_range(ensemble, points, norm, 0, points.size(),
                            values.data());
    } else {
      std::vector<std::thread> workers;
      const std::size_t chunk = (points.size() + n_threads - 1) / n_threads;
      for (int w = 0; w < n_threads; ++w) {
        const std::size_t b = static_cast<std::size_t>(w) * chunk;
        const std::size_t e = std::min(points.size(), b + chunk);
        if (b >= e) break;
        workers.emplace_back(evaluate_points_range, std::cref(ensemble),
                             std::cref(points), norm, b, e, values.data());
      }
      for (auto& th : workers) th.join();
    }
  }

  FieldRealization field{points, std::move(values), {}};
  field.provenance.seed = ensemble.seed;
  field.provenance.method = "spectral";
  field.provenance.p = ensemble.p();
  return field;
}

} // namespace stsim
