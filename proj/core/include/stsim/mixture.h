#ifndef STSIM_MIXTURE_H
#define STSIM_MIXTURE_H

#include <string>
#include <utility>
#include <vector>

#include "stsim/rng.h"

namespace stsim {

/// Nonnegative mixture measure behind the completely monotone spatial
/// part: phi(t) is its Laplace transform. Three kinds are supported:
///
///  - DiracAt(r):       phi(t) = exp(-r t), r > 0
///  - SqrtGammaHalf(c): phi(t) = exp(-c sqrt(t)); the latent scale is
///                      R = c^2 / (4 G) with G ~ Gamma(1/2, rate 1)
///  - Tabulated:        finite mixture of exponentials
class MixtureMeasure {
public:
  enum class Kind { DiracAt, SqrtGammaHalf, Tabulated };

  static MixtureMeasure dirac(double r);
  static MixtureMeasure sqrt_gamma_half(double c);
  /// Atoms are (r >= 0, weight > 0) pairs; weights must sum to 1
  /// within 1e-12.
  static MixtureMeasure tabulated(std::vector<std::pair<double, double>> atoms,
                                  std::string label = "tabulated");

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  double param() const { return param_; }
  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

  bool has_atom_at_zero() const;

  /// Draw the latent scale R; always >= 0.
  double sample(RngStream& rng) const;

  /// E[exp(-R t)], the completely monotone function phi(t).
  double laplace(double t) const;

private:
  MixtureMeasure(Kind kind, double param, std::string label)
      : kind_(kind), param_(param), label_(std::move(label)) {}

  Kind kind_;
  double param_ = 0.0;
  std::vector<std::pair<double, double>> atoms_;
  std::string label_;
};

} // namespace stsim

#endif
