#include "stsim/substitution.h"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lattice_eval.h"

namespace stsim {

namespace {

bool time_matches(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

std::size_t instant_index(const std::vector<double>& instants, double t) {
  auto it = std::lower_bound(instants.begin(), instants.end(), t - 1e-9);
  for (; it != instants.end() && *it <= t + 1e-9; ++it)
    if (time_matches(*it, t))
      return static_cast<std::size_t>(it - instants.begin());
  throw std::invalid_argument(
      "substitution field was not simulated at the requested time instant");
}

} // namespace

double IntrinsicPath::value_at(double t) const {
  return values[instant_index(instants, t)];
}

struct IntrinsicPathFactory::Impl {
  std::vector<double> instants;    // sorted
  std::vector<int> nonzero;        // indices of instants != 0
  Eigen::MatrixXd chol;            // lower factor over nonzero instants
};

IntrinsicPathFactory::IntrinsicPathFactory(const VariogramSpec& spec,
                                           std::vector<double> instants,
                                           std::size_t dense_cap)
    : impl_(std::make_unique<Impl>()) {
  if (instants.empty())
    throw std::invalid_argument("intrinsic path: needs at least one instant");
  std::sort(instants.begin(), instants.end());
  for (std::size_t i = 1; i < instants.size(); ++i)
    if (instants[i] == instants[i - 1])
      throw std::invalid_argument("intrinsic path: instants must be distinct");
  if (instants.size() > dense_cap)
    throw std::invalid_argument(
        "intrinsic path: instant count exceeds the dense factorization cap");

  impl_->instants = std::move(instants);
  for (std::size_t i = 0; i < impl_->instants.size(); ++i)
    if (impl_->instants[i] != 0.0)
      impl_->nonzero.push_back(static_cast<int>(i));

  const int m = static_cast<int>(impl_->nonzero.size());
  if (m == 0) return; // only the anchor t = 0

  Eigen::MatrixXd cov(m, m);
  for (int i = 0; i < m; ++i) {
    const double ti = impl_->instants[impl_->nonzero[i]];
    for (int j = 0; j <= i; ++j) {
      const double tj = impl_->instants[impl_->nonzero[j]];
      const double v = spec(ti) + spec(tj) - spec(ti - tj);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }

  const double scale = cov.diagonal().maxCoeff();
  for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
    Eigen::MatrixXd shifted = cov;
    if (jitter > 0.0)
      shifted.diagonal().array() += jitter * std::max(scale, 1.0);
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      impl_->chol = llt.matrixL();
      return;
    }
  }
  throw std::runtime_error(
      "intrinsic path: increment covariance is not positive definite "
      "(invalid variogram?)");
}

IntrinsicPathFactory::~IntrinsicPathFactory() = default;
IntrinsicPathFactory::IntrinsicPathFactory(IntrinsicPathFactory&&) noexcept =
    default;

const std::vector<double>& IntrinsicPathFactory::instants() const {
  return impl_->instants;
}

IntrinsicPath IntrinsicPathFactory::simulate(RngStream& rng) const {
  const int m = static_cast<int>(impl_->nonzero.size());
  IntrinsicPath path;
  path.instants = impl_->instants;
  path.values.assign(impl_->instants.size(), 0.0);
  if (m == 0) return path;

  Eigen::VectorXd z(m);
  for (int i = 0; i < m; ++i) z(i) = rng.normal();
  Eigen::VectorXd w = impl_->chol * z;
  for (int i = 0; i < m; ++i) path.values[impl_->nonzero[i]] = w(i);
  return path;
}

IntrinsicPath simulate_intrinsic_path(const VariogramSpec& spec,
                                      const std::vector<double>& instants,
                                      RngStream& rng) {
  IntrinsicPathFactory factory(spec, instants);
  return factory.simulate(rng);
}

SubstitutionEnsemble build_substitution_ensemble(
    const GneitingModel& model, const std::vector<double>& instants, int p,
    std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("substitution ensemble: p must be >= 1");
  IntrinsicPathFactory factory(model.gamma(), instants);

  SubstitutionEnsemble ens;
  ens.k = model.k();
  ens.seed = seed;
  ens.instants = factory.instants();
  ens.components.resize(p);
  for (int j = 1; j <= p; ++j) {
    RngStream rng(seed, static_cast<std::uint64_t>(j));
    SubstitutionComponent& c = ens.components[j - 1];
    c.r = model.mu().sample(rng);
    c.omega_tilde.resize(model.k());
    for (double& w : c.omega_tilde) w = rng.normal();
    c.phi = rng.uniform(0.0, 2.0 * M_PI);
    c.amp = std::sqrt(-2.0 * std::log(rng.uniform()));
    c.w = factory.simulate(rng).values;
  }
  return ens;
}

namespace {

struct ComponentGeometry {
  std::vector<double> freq; // sqrt(2r) * omega_tilde
  double w_coef;            // |omega_tilde| / sqrt(2)
};

std::vector<ComponentGeometry> component_geometry(
    const SubstitutionEnsemble& ens) {
  std::vector<ComponentGeometry> geo(ens.components.size());
  for (std::size_t j = 0; j < ens.components.size(); ++j) {
    const SubstitutionComponent& c = ens.components[j];
    const double sr = std::sqrt(2.0 * c.r);
    double norm2 = 0.0;
    geo[j].freq.resize(c.omega_tilde.size());
    for (std::size_t d = 0; d < c.omega_tilde.size(); ++d) {
      geo[j].freq[d] = sr * c.omega_tilde[d];
      norm2 += c.omega_tilde[d] * c.omega_tilde[d];
    }
    geo[j].w_coef = std::sqrt(norm2 / 2.0);
  }
  return geo;
}

void evaluate_grid_slices(const SubstitutionEnsemble& ens,
                          const std::vector<ComponentGeometry>& geo,
                          const std::vector<std::size_t>& slice_instant,
                          const GridSpec& grid, double norm, int t_begin,
                          int t_end, double* values) {
  const int k = ens.k;
  const std::size_t slice_size = grid.num_points() / grid.nt;
  std::vector<double> ang(k);
  for (int it = t_begin; it < t_end; ++it) {
    double* slice = values + static_cast<std::size_t>(it) * slice_size;
    const std::size_t ti = slice_instant[it];
    for (std::size_t j = 0; j < ens.components.size(); ++j) {
      const SubstitutionComponent& c = ens.components[j];
      double base = c.phi + geo[j].w_coef * c.w[ti];
      for (int d = 0; d < k; ++d) {
        base += geo[j].freq[d] * grid.origin[d];
        ang[d] = geo[j].freq[d] * grid.mesh[d];
      }
      detail::accumulate_cosine_lattice(grid.counts, ang, base, norm * c.amp,
                                        slice);
    }
  }
}

void evaluate_points_range(const SubstitutionEnsemble& ens,
                           const std::vector<ComponentGeometry>& geo,
                           const SpaceTimePointSet& pts, double norm,
                           std::size_t begin, std::size_t end, double* values) {
  const int k = ens.k;
  for (std::size_t i = begin; i < end; ++i) {
    const double* x = pts.point(i);
    const std::size_t ti = instant_index(ens.instants, pts.time(i));
    double acc = 0.0;
    for (std::size_t j = 0; j < ens.components.size(); ++j) {
      const SubstitutionComponent& c = ens.components[j];
      double angle = c.phi + geo[j].w_coef * c.w[ti];
      for (int d = 0; d < k; ++d) angle += geo[j].freq[d] * x[d];
      acc += c.amp * std::cos(angle);
    }
    values[i] = norm * acc;
  }
}

} // namespace

FieldRealization evaluate_substitution(const SubstitutionEnsemble& ensemble,
                                       const SpaceTimePointSet& points,
                                       int n_threads) {
  if (points.k() != ensemble.k)
    throw std::invalid_argument("evaluate: point dimension does not match ensemble");
  if (n_threads < 1) n_threads = 1;

  const double norm = 1.0 / std::sqrt(static_cast<double>(ensemble.p()));
  const auto geo = component_geometry(ensemble);
  std::vector<double> values(points.size(), 0.0);

  if (points.grid()) {
    const GridSpec& grid = *points.grid();
    // resolve every slice time up front so a missing instant fails fast
    std::vector<std::size_t> slice_instant(grid.nt);
    for (int it = 0; it < grid.nt; ++it)
      slice_instant[it] = instant_index(ensemble.instants, grid.t0 + grid.dt * it);

    if (n_threads == 1 || grid.nt == 1) {
      evaluate_grid_slices(ensemble, geo, slice_instant, grid, norm, 0, grid.nt,
                           values.data());
    } else {
      std::vector<std::thread> workers;
      const int chunk = (grid.nt + n_threads - 1) / n_threads;
      for (int w = 0; w < n_threads; ++w) {
        const int b = w * chunk;
        const int e = std::min(grid.nt, b + chunk);
        if (b >= e) break;
        workers.emplace_back(evaluate_grid_slices, std::cref(ensemble),
                             std::cref(geo), std::cref(slice_instant),
                             std::cref(grid), norm, b, e, values.data());
      }
      for (auto& th : workers) th.join();
    }
  } else {
    if (n_threads == 1) {
      evaluate_points_range(ensemble, geo, points, norm, 0, points.size(),
                            values.data());
    } else {
      std::vector<std::thread> workers;
      const std::size_t chunk = (points.size() + n_threads - 1) / n_threads;
      for (int w = 0; w < n_threads; ++w) {
        const std::size_t b = static_cast<std::size_t>(w) * chunk;
        const std::size_t e = std::min(points.size(), b + chunk);
        if (b >= e) break;
        workers.emplace_back(evaluate_points_range, std::cref(ensemble),
                             std::cref(geo), std::cref(points), norm, b, e,
                             values.data());
      }
      for (auto& th : workers) th.join();
    }
  }

  FieldRealization field{points, std::move(values), {}};
  field.provenance.seed = ensemble.seed;
  field.provenance.method = "substitution";
  field.provenance.p = ensemble.p();
  return field;
}

} // namespace stsim
