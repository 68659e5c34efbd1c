#ifndef STSIM_VARIOGRAM_H
#define STSIM_VARIOGRAM_H

#include <optional>
#include <string>
#include <vector>

#include "stsim/rng.h"

namespace stsim {

enum class VariogramFamily {
  Linear,          // b |u|
  FractionalPower, // |u|^alpha
  Logarithmic,     // ln(a^2 + u^2)/ln(a^2) - 1
  CauchyClass,     // (a |u|^alpha + 1)^beta - 1
  TableEntry,
};

/// How the conditional temporal frequency T(omega, r) is sampled.
enum class SamplerStrategy {
  DirectCauchy,
  GammaMixture,
  StableMixture,
  ShotNoiseGeneric,
  CompoundPoisson,
};

struct VariogramClass {
  bool bounded;
  bool temporal_atom;
};

/// A temporal variogram from the catalog: closed-form evaluation,
/// boundedness metadata, optional spectral density, and the strategy
/// used to sample the conditional temporal frequency.
///
/// Parameter ranges are validated at construction.
class VariogramSpec {
public:
  static VariogramSpec linear(double b);
  static VariogramSpec fractional_power(double alpha);
  static VariogramSpec logarithmic(double a);
  static VariogramSpec cauchy(double a, double alpha, double beta);
  /// Catalog entries keyed by id; "power" takes an exponent parameter,
  /// the others ignore it. See table_ids() for the full list.
  static VariogramSpec table_entry(const std::string& id, double param = 1.0);
  static const std::vector<std::string>& table_ids();

  double operator()(double u) const;

  VariogramFamily family() const { return family_; }
  const std::string& id() const { return id_; }
  SamplerStrategy strategy() const { return strategy_; }
  /// Opt into the generic shot-noise sampler (logarithmic family only).
  void set_strategy(SamplerStrategy s);

  bool bounded() const { return bounded_; }

  bool has_spectral_density() const { return has_density_; }
  /// Density of the spectral measure of the variogram, d Chi / dx.
  double spectral_density(double x) const;
  /// Total mass Chi(R); +infinity when the variogram is unbounded.
  double spectral_mass() const;
  /// Draw a jump from the normalized spectral measure (bounded entries).
  double jump_sample(RngStream& rng) const;

  double param_a() const { return a_; }
  double param_b() const { return b_; }
  double param_alpha() const { return alpha_; }
  double param_beta() const { return beta_; }

private:
  VariogramSpec() = default;

  VariogramFamily family_ = VariogramFamily::Linear;
  std::string id_;
  double a_ = 0.0, b_ = 0.0, alpha_ = 0.0, beta_ = 0.0;
  bool bounded_ = false;
  bool has_density_ = false;
  SamplerStrategy strategy_ = SamplerStrategy::DirectCauchy;
};

VariogramClass classify_variogram(const VariogramSpec& spec);

} // namespace stsim

#endif
