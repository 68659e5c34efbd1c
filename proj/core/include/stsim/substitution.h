#ifndef STSIM_SUBSTITUTION_H
#define STSIM_SUBSTITUTION_H

#include <cstdint>
#include <memory>
#include <vector>

#include "stsim/model.h"
#include "stsim/points.h"
#include "stsim/rng.h"

namespace stsim {

/// Intrinsic Gaussian path W on a fixed set of time instants, anchored
/// by W(0) = 0. Increments satisfy Var[W(t) - W(t')] = 2 gamma(t - t').
struct IntrinsicPath {
  std::vector<double> instants; // sorted ascending, distinct
  std::vector<double> values;

  /// Value at a simulated instant; throws if t was not simulated
  /// (no interpolation, it would change the covariance).
  double value_at(double t) const;
};

/// Shared dense factorization of the increment covariance
/// gamma(t) + gamma(t') - gamma(t - t'), computed once per instants
/// vector and reused read-only across components.
class IntrinsicPathFactory {
public:
  IntrinsicPathFactory(const VariogramSpec& spec, std::vector<double> instants,
                       std::size_t dense_cap = 10000);
  ~IntrinsicPathFactory();
  IntrinsicPathFactory(IntrinsicPathFactory&&) noexcept;

  IntrinsicPath simulate(RngStream& rng) const;
  const std::vector<double>& instants() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

IntrinsicPath simulate_intrinsic_path(const VariogramSpec& spec,
                                      const std::vector<double>& instants,
                                      RngStream& rng);

/// One substitution component of Eq-(16) form:
/// amp/sqrt(p) * cos(sqrt(2r) <omega_tilde, x> + |omega_tilde|/sqrt(2) W(t) + phi).
struct SubstitutionComponent {
  double r = 0.0;                   // mixture scale, 0 allowed here
  std::vector<double> omega_tilde;  // k standard Gaussian coordinates
  double phi = 0.0;
  double amp = 0.0;
  std::vector<double> w; // path values on the shared instants
};

struct SubstitutionEnsemble {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<double> instants;
  std::vector<SubstitutionComponent> components;
  int p() const { return static_cast<int>(components.size()); }
};

SubstitutionEnsemble build_substitution_ensemble(const GneitingModel& model,
                                                 const std::vector<double>& instants,
                                                 int p, std::uint64_t seed);

/// Evaluate at every point; each point's time must be one of the
/// ensemble's instants.
FieldRealization evaluate_substitution(const SubstitutionEnsemble& ensemble,
                                       const SpaceTimePointSet& points,
                                       int n_threads = 1);

} // namespace stsim

#endif
