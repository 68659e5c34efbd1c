#include "stsim/mixture.h"

#include <cmath>
#include <stdexcept>

#include "stsim/distributions.h"

namespace stsim {

MixtureMeasure MixtureMeasure::dirac(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("DiracAt: r must be > 0");
  return MixtureMeasure(Kind::DiracAt, r, "dirac");
}

MixtureMeasure MixtureMeasure::sqrt_gamma_half(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("SqrtGammaHalf: c must be > 0");
  return MixtureMeasure(Kind::SqrtGammaHalf, c, "sqrt_gamma_half");
}

MixtureMeasure MixtureMeasure::tabulated(
    std::vector<std::pair<double, double>> atoms, std::string label) {
  if (atoms.empty())
    throw std::invalid_argument("Tabulated: needs at least one atom");
  double total = 0.0;
  for (const auto& [r, w] : atoms) {
    if (r < 0.0) throw std::invalid_argument("Tabulated: atom r must be >= 0");
    if (!(w > 0.0))
      throw std::invalid_argument("Tabulated: atom weight must be > 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("Tabulated: weights must sum to 1");
  MixtureMeasure m(Kind::Tabulated, 0.0, std::move(label));
  m.atoms_ = std::move(atoms);
  return m;
}

bool MixtureMeasure::has_atom_at_zero() const {
  if (kind_ != Kind::Tabulated) return false;
  for (const auto& [r, w] : atoms_)
    if (r == 0.0 && w > 0.0) return true;
  return false;
}

double MixtureMeasure::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::DiracAt:
      return param_;
    case Kind::SqrtGammaHalf: {
      const double g = sample_gamma(0.5, 1.0, rng);
      return param_ * param_ / (4.0 * g);
    }
    case Kind::Tabulated: {
      double u = rng.uniform();
      for (const auto& [r, w] : atoms_) {
        u -= w;
        if (u <= 0.0) return r;
      }
      return atoms_.back().first;
    }
  }
  return 0.0;
}

double MixtureMeasure::laplace(double t) const {
  switch (kind_) {
    case Kind::DiracAt:
      return std::exp(-param_ * t);
    case Kind::SqrtGammaHalf:
      return std::exp(-param_ * std::sqrt(t));
    case Kind::Tabulated: {
      double sum = 0.0;
      for (const auto& [r, w] : atoms_) sum += w * std::exp(-r * t);
      return sum;
    }
  }
  return 0.0;
}

} // namespace stsim
