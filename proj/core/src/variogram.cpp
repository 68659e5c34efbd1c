#include "stsim/variogram.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stsim {

namespace {

const std::vector<std::string> kTableIds = {
    "power",         // |u|^alpha, density ~ |x|^(-1-alpha)
    "smoothed_linear", // |u| - 1 + exp(-|u|)
    "bilinear",      // |u| then 2|u| - 1
    "cubic",         // u^2 (3 - |u|) then 3|u| - 1
    "logsq",         // ln(1 + u^2)
    "sinh_quarter",  // 8 sqrt(pi) sinh^2(asinh(u)/4)
    "arctan",        // 2|u| atan|u| - ln(1 + u^2)
    "frac34",        // (8 sqrt(pi)/3)(1 - (1+u^2)^(3/4) cos(3 atan(u)/2))
    "exp_bounded",   // 1 - exp(-|u|); the one finite-mass entry
};

} // namespace

VariogramSpec VariogramSpec::linear(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("linear variogram: b must be > 0");
  VariogramSpec s;
  s.family_ = VariogramFamily::Linear;
  s.id_ = "linear";
  s.b_ = b;
  s.bounded_ = false;
  s.has_density_ = true;
  s.strategy_ = SamplerStrategy::DirectCauchy;
  return s;
}

VariogramSpec VariogramSpec::fractional_power(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("fractional power variogram: alpha must be in (0,2)");
  VariogramSpec s;
  s.family_ = VariogramFamily::FractionalPower;
  s.id_ = "fractional_power";
  s.alpha_ = alpha;
  s.bounded_ = false;
  s.has_density_ = true;
  s.strategy_ = SamplerStrategy::StableMixture;
  return s;
}

VariogramSpec VariogramSpec::logarithmic(double a) {
  if (!(a > 1.0))
    throw std::invalid_argument("logarithmic variogram: a must be > 1");
  VariogramSpec s;
  s.family_ = VariogramFamily::Logarithmic;
  s.id_ = "logarithmic";
  s.a_ = a;
  s.bounded_ = false;
  s.has_density_ = true;
  s.strategy_ = SamplerStrategy::GammaMixture;
  return s;
}

VariogramSpec VariogramSpec::cauchy(double a, double alpha, double beta) {
  if (!(a > 0.0)) throw std::invalid_argument("cauchy variogram: a must be > 0");
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::invalid_argument("cauchy variogram: alpha must be in (0,2]");
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("cauchy variogram: beta must be in (0,1]");
  VariogramSpec s;
  s.family_ = VariogramFamily::CauchyClass;
  s.id_ = "cauchy";
  s.a_ = a;
  s.alpha_ = alpha;
  s.beta_ = beta;
  s.bounded_ = false;
  s.has_density_ = false; // no closed-form spectral measure for this family
  s.strategy_ = SamplerStrategy::StableMixture;
  return s;
}

VariogramSpec VariogramSpec::table_entry(const std::string& id, double param) {
  VariogramSpec s;
  s.family_ = VariogramFamily::TableEntry;
  s.id_ = id;
  s.has_density_ = true;
  if (id == "power") {
    if (!(param > 0.0) || !(param < 2.0))
      throw std::invalid_argument("table entry power: alpha must be in (0,2)");
    s.alpha_ = param;
  } else if (id == "exp_bounded") {
    s.bounded_ = true;
  } else {
    bool known = false;
    for (const auto& k : kTableIds)
      if (k == id) known = true;
    if (!known)
      throw std::invalid_argument("unknown variogram table entry: " + id);
  }
  s.strategy_ = s.bounded_ ? SamplerStrategy::CompoundPoisson
                           : SamplerStrategy::ShotNoiseGeneric;
  return s;
}

const std::vector<std::string>& VariogramSpec::table_ids() { return kTableIds; }

void VariogramSpec::set_strategy(SamplerStrategy s) {
  if (s == SamplerStrategy::ShotNoiseGeneric &&
      family_ != VariogramFamily::Logarithmic &&
      !(family_ == VariogramFamily::TableEntry && !bounded_))
    throw std::invalid_argument(
        "shot-noise strategy requires an unbounded variogram with a known "
        "spectral measure");
  strategy_ = s;
}

double VariogramSpec::operator()(double u) const {
  const double au = std::abs(u);
  switch (family_) {
    case VariogramFamily::Linear:
      return b_ * au;
    case VariogramFamily::FractionalPower:
      return std::pow(au, alpha_);
    case VariogramFamily::Logarithmic:
      return std::log(a_ * a_ + u * u) / std::log(a_ * a_) - 1.0;
    case VariogramFamily::CauchyClass:
      return std::pow(a_ * std::pow(au, alpha_) + 1.0, beta_) - 1.0;
    case VariogramFamily::TableEntry:
      break;
  }
  if (id_ == "power") return std::pow(au, alpha_);
  if (id_ == "smoothed_linear") return au - 1.0 + std::exp(-au);
  if (id_ == "bilinear") return au < 1.0 ? au : 2.0 * au - 1.0;
  if (id_ == "cubic") return au < 1.0 ? u * u * (3.0 - au) : 3.0 * au - 1.0;
  if (id_ == "logsq") return std::log1p(u * u);
  if (id_ == "sinh_quarter") {
    const double s = std::sinh(std::asinh(u) / 4.0);
    return 8.0 * std::sqrt(M_PI) * s * s;
  }
  if (id_ == "arctan") return 2.0 * au * std::atan(au) - std::log1p(u * u);
  if (id_ == "frac34")
    return 8.0 * std::sqrt(M_PI) / 3.0 *
           (1.0 - std::pow(1.0 + u * u, 0.75) * std::cos(1.5 * std::atan(u)));
  if (id_ == "exp_bounded") return 1.0 - std::exp(-au);
  throw std::logic_error("unhandled variogram id: " + id_);
}

double VariogramSpec::spectral_density(double x) const {
  if (!has_density_)
    throw std::invalid_argument("variogram has no closed-form spectral density");
  const double ax = std::abs(x);
  switch (family_) {
    case VariogramFamily::Linear:
      return b_ / (M_PI * x * x);
    case VariogramFamily::Logarithmic:
      return std::exp(-a_ * ax) / (ax * std::log(a_ * a_));
    case VariogramFamily::FractionalPower: {
      const double coef = -2.0 * std::tgamma(alpha_) /
                          (std::tgamma(alpha_ / 2.0) * std::tgamma(-alpha_ / 2.0));
      return coef * std::pow(ax, -1.0 - alpha_);
    }
    default:
      break;
  }
  if (id_ == "power") {
    const double coef = -2.0 * std::tgamma(alpha_) /
                        (std::tgamma(alpha_ / 2.0) * std::tgamma(-alpha_ / 2.0));
    return coef * std::pow(ax, -1.0 - alpha_);
  }
  if (id_ == "smoothed_linear") return 1.0 / (M_PI * x * x * (1.0 + x * x));
  if (id_ == "bilinear") return (1.0 + std::cos(x)) / (M_PI * x * x);
  if (id_ == "cubic") {
    const double x2 = x * x;
    return 6.0 * (1.0 - std::cos(x)) / (M_PI * x2 * x2);
  }
  if (id_ == "logsq") return std::exp(-ax) / ax;
  if (id_ == "sinh_quarter") return std::exp(-ax) / std::pow(ax, 1.5);
  if (id_ == "arctan") return std::exp(-ax) / (x * x);
  if (id_ == "frac34") return std::exp(-ax) / std::pow(ax, 2.5);
  if (id_ == "exp_bounded") return 1.0 / (M_PI * (1.0 + x * x));
  throw std::logic_error("unhandled variogram id: " + id_);
}

double VariogramSpec::spectral_mass() const {
  if (bounded_) {
    if (id_ == "exp_bounded") return 1.0; // standard Cauchy density
    throw std::logic_error("bounded entry without a mass: " + id_);
  }
  return std::numeric_limits<double>::infinity();
}

double VariogramSpec::jump_sample(RngStream& rng) const {
  if (!bounded_)
    throw std::invalid_argument(
        "jump sampling requires a finite spectral measure");
  // exp_bounded: normalized measure is the standard Cauchy
  return std::tan(M_PI * (rng.uniform() - 0.5));
}

VariogramClass classify_variogram(const VariogramSpec& spec) {
  // A temporal atom exists exactly when the spectral mass is finite,
  // i.e. when the variogram is bounded.
  return VariogramClass{spec.bounded(), spec.bounded()};
}

} // namespace stsim
