#include "stsim/model.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stsim {

GneitingModel::GneitingModel(int k, MixtureMeasure mu, VariogramSpec gamma)
    : k_(k), mu_(std::move(mu)), gamma_(std::move(gamma)) {
  if (k_ < 1) throw std::invalid_argument("model: k must be >= 1");
}

double GneitingModel::covariance(std::span<const double> h, double u) const {
  if (static_cast<int>(h.size()) != k_)
    throw std::invalid_argument("covariance: h must have length k");
  double h2 = 0.0;
  for (double hi : h) h2 += hi * hi;
  const double g1 = gamma_(u) + 1.0;
  return std::pow(g1, -0.5 * k_) * mu_.laplace(h2 / g1);
}

double GneitingModel::temporal_covariance(double u) const {
  return std::pow(gamma_(u) + 1.0, -0.5 * k_);
}

std::string GneitingModel::tag() const {
  std::ostringstream os;
  os << "k" << k_ << ":" << mu_.label();
  if (mu_.kind() != MixtureMeasure::Kind::Tabulated) os << "(" << mu_.param() << ")";
  os << ":" << gamma_.id();
  return os.str();
}

} // namespace stsim
