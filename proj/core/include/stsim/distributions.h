#ifndef STSIM_DISTRIBUTIONS_H
#define STSIM_DISTRIBUTIONS_H

#include <cstdint>
#include <functional>
#include <vector>

#include "stsim/rng.h"

namespace stsim {

/// i.i.d. centered Gaussian components with the given variance.
std::vector<double> sample_gaussian_vector(int dim, double variance,
                                           RngStream& rng);

/// Gamma(shape, rate); mean shape/rate, Laplace transform
/// (1 + s/rate)^(-shape). Marsaglia-Tsang squeeze, with the U^(1/shape)
/// boost for shape < 1.
double sample_gamma(double shape, double rate, RngStream& rng);

/// Symmetric (bilateral) stable draw with characteristic function
/// exp(-|u|^alpha), 0 < alpha <= 2. Chambers-Mallows-Stuck; alpha = 2
/// delegates to a Gaussian with variance 2, alpha = 1 is Cauchy.
double sample_symmetric_stable(double alpha, RngStream& rng);

/// Unilateral (positive) stable draw with Laplace transform exp(-s^beta),
/// 0 < beta < 1. Zolotarev/Kanter representation.
double sample_unilateral_stable(double beta, RngStream& rng);

/// Counters for the tilted-stable sampler; outer_trials counts proposals
/// of the active rejection loop, accepts counts returned samples.
struct TiltedStableCounters {
  std::uint64_t outer_trials = 0;
  std::uint64_t accepts = 0;
  double acceptance_rate() const {
    return outer_trials == 0 ? 1.0
                             : static_cast<double>(accepts) /
                                   static_cast<double>(outer_trials);
  }
};

/// Exponentially tilted unilateral stable draw with Laplace transform
/// exp(tilt^beta - (tilt+s)^beta), 0 < beta <= 1, tilt >= 0.
///
/// beta = 1 is the degenerate constant 1. For tilt <= 1 a plain rejection
/// against the untilted stable is used (acceptance exp(-tilt^beta) >= 1/e);
/// larger tilts go through the double-rejection scheme whose acceptance
/// rate is bounded away from zero uniformly in the tilt.
double sample_tilted_unilateral_stable(double beta, double tilt,
                                       RngStream& rng,
                                       TiltedStableCounters* counters = nullptr);

/// First n0 points of the Poisson process with intensity lambda/t on
/// [a, infinity), obtained by inverting a homogeneous process:
/// T_n = a / (U_1 ... U_n)^(1/lambda). The list is truncated at
/// n0 = ceil(-ln(eps) / ln(1 + 2/lambda)), which caps the discarded
/// tail at a fraction eps of the shot-noise variance.
std::vector<double> sample_poisson_times_logintensity(double a, double lambda,
                                                      double eps,
                                                      RngStream& rng);

/// Poisson count with the given mean (inversion for small means,
/// PTRS-style rejection is not needed at the intensities used here).
long sample_poisson_count(double mean, RngStream& rng);

/// Sum of N i.i.d. jumps, N ~ Poisson(intensity). Returns exactly 0 with
/// probability exp(-intensity).
double sample_compound_poisson(double intensity,
                               const std::function<double(RngStream&)>& jump,
                               RngStream& rng);

} // namespace stsim

#endif
