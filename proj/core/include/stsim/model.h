#ifndef STSIM_MODEL_H
#define STSIM_MODEL_H

#include <span>
#include <string>

#include "stsim/mixture.h"
#include "stsim/variogram.h"

namespace stsim {

/// Space-time covariance model
///   C(h, u) = (gamma(u) + 1)^(-k/2) phi(|h|^2 / (gamma(u) + 1))
/// with phi the Laplace transform of the mixture measure mu and gamma a
/// continuous temporal variogram. Unit normalization: C(0,0) = 1.
///
/// Immutable after construction; evaluation is pure and thread-safe.
class GneitingModel {
public:
  GneitingModel(int k, MixtureMeasure mu, VariogramSpec gamma);

  int k() const { return k_; }
  const MixtureMeasure& mu() const { return mu_; }
  const VariogramSpec& gamma() const { return gamma_; }

  /// C(h, u); h must have length k.
  double covariance(std::span<const double> h, double u) const;

  /// Purely temporal covariance C(0, u) = (gamma(u) + 1)^(-k/2).
  double temporal_covariance(double u) const;

  /// Short textual tag used in provenance records.
  std::string tag() const;

private:
  int k_;
  MixtureMeasure mu_;
  VariogramSpec gamma_;
};

} // namespace stsim

#endif
