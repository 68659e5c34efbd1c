#include "stsim/distributions.h"

#include <cmath>
#include <stdexcept>

namespace stsim {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

// Zolotarev's function A(u) = (sin(au)^a sin((1-a)u)^(1-a) / sin(u))^(1/(1-a))
double zolotarev_a(double u, double alpha) {
  return std::pow(std::pow(std::sin(alpha * u), alpha) *
                      std::pow(std::sin((1.0 - alpha) * u), 1.0 - alpha) /
                      std::sin(u),
                  1.0 / (1.0 - alpha));
}

// B(u)/B(0) = (A(0)/A(u))^(1-a) written through sinc ratios, numerically
// stable near u = 0. Satisfies A(u) m(u) delta(u)^2 stationarity bookkeeping:
// h(mode) = lambda^a / B_ratio and A(u) delta = sqrt(gamma B_ratio).
double zolotarev_b_ratio(double u, double alpha) {
  return sinc(u) / (std::pow(sinc(alpha * u), alpha) *
                    std::pow(sinc((1.0 - alpha) * u), 1.0 - alpha));
}

// Devroye's double rejection for the exponentially tilted unilateral
// stable S(alpha, lambda) with density proportional to
// exp(-lambda s) f_alpha(s). Uniformly bounded rejection rate in lambda.
double tilted_stable_double_rejection(double alpha, double lambda,
                                      RngStream& rng,
                                      TiltedStableCounters* counters) {
  const double lambda_alpha = std::pow(lambda, alpha);
  const double gamma = lambda_alpha * alpha * (1.0 - alpha);
  const double sqrt_gamma = std::sqrt(gamma);
  const double c1 = std::sqrt(M_PI / 2.0);
  const double c2 = 2.0 + c1;
  const double xi = (c2 * std::sqrt(2.0 * gamma) + 1.0) / M_PI;
  const double psi =
      c2 * std::sqrt(gamma * M_PI) * std::exp(-gamma * M_PI * M_PI / 8.0) / M_PI;
  const double w1 = xi * std::sqrt(M_PI / (2.0 * gamma));
  const double w2 = 2.0 * psi * std::sqrt(M_PI);
  const double w3 = xi * M_PI;
  const double b = (1.0 - alpha) / alpha;

  for (;;) {
    if (counters) ++counters->outer_trials;

    double u;
    do {
      const double v = rng.uniform();
      const double wp = rng.uniform();
      if (gamma >= 1.0) {
        if (v < w1 / (w1 + w2))
          u = std::abs(rng.normal()) / sqrt_gamma;
        else
          u = M_PI * (1.0 - wp * wp);
      } else {
        if (v < w3 / (w3 + w2))
          u = M_PI * wp;
        else
          u = M_PI * (1.0 - wp * wp);
      }
    } while (u >= M_PI);

    const double w = rng.uniform();
    const double zeta = std::sqrt(zolotarev_b_ratio(u, alpha));
    const double phi = std::pow(sqrt_gamma + alpha * zeta, 1.0 / alpha);
    const double z = phi / (phi - std::pow(sqrt_gamma, 1.0 / alpha));
    const double num =
        (gamma >= 1.0 ? xi * std::exp(-gamma * u * u / 2.0) : xi) +
        psi / std::sqrt(M_PI - u);
    const double rho = M_PI *
                       std::exp(-lambda_alpha * (1.0 - 1.0 / (zeta * zeta))) *
                       num / ((1.0 + c1) * sqrt_gamma / zeta + z);
    const double zz = w * rho;
    if (!(zz <= 1.0)) continue;

    const double a = zolotarev_a(u, alpha);
    const double m = std::pow(b / a, alpha) * lambda_alpha;
    const double delta = std::sqrt(m * alpha / a);
    const double a1 = delta * c1;
    const double a2 = delta;
    const double a3 = z / a;
    const double s = a1 + a2 + a3;

    const double vp = rng.uniform();
    double np = 0.0, ep = 0.0, x;
    if (vp < a1 / s) {
      np = rng.normal();
      x = m - delta * std::abs(np);
    } else if (vp < (a1 + a2) / s) {
      x = m + delta * rng.uniform();
    } else {
      ep = rng.exponential();
      x = m + delta + ep * a3;
    }
    if (x < 0.0) continue;

    const double e = -std::log(zz);
    double lhs = a * (x - m) + lambda * (std::pow(x, -b) - std::pow(m, -b));
    if (x < m) lhs -= np * np / 2.0;
    if (x > m + delta) lhs -= ep;

    if (lhs <= e) {
      if (counters) ++counters->accepts;
      return std::pow(x, -b);
    }
  }
}

} // namespace

std::vector<double> sample_gaussian_vector(int dim, double variance,
                                           RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("gaussian vector: dim must be >= 1");
  if (!(variance > 0.0))
    throw std::invalid_argument("gaussian vector: variance must be > 0");
  const double sd = std::sqrt(variance);
  std::vector<double> out(dim);
  for (int i = 0; i < dim; ++i) out[i] = sd * rng.normal();
  return out;
}

double sample_gamma(double shape, double rate, RngStream& rng) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("gamma: shape and rate must be > 0");

  double boost = 1.0;
  double d_shape = shape;
  if (shape < 1.0) {
    boost = std::pow(rng.uniform(), 1.0 / shape);
    d_shape = shape + 1.0;
  }
  const double d = d_shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double xn, v;
    do {
      xn = rng.normal();
      v = 1.0 + c * xn;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = xn * xn;
    if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v / rate;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
      return boost * d * v / rate;
  }
}

double sample_symmetric_stable(double alpha, RngStream& rng) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::invalid_argument("symmetric stable: alpha must be in (0,2]");
  if (alpha == 2.0) {
    // characteristic function exp(-u^2), i.e. Gaussian with variance 2
    return std::sqrt(2.0) * rng.normal();
  }
  const double u = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
  if (alpha == 1.0) return std::tan(u);
  const double e = rng.exponential();
  return std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
}

double sample_unilateral_stable(double beta, RngStream& rng) {
  if (!(beta > 0.0) || beta >= 1.0)
    throw std::invalid_argument("unilateral stable: beta must be in (0,1)");
  const double u = rng.uniform(0.0, M_PI);
  const double e = rng.exponential();
  return std::pow(zolotarev_a(u, beta) / e, (1.0 - beta) / beta);
}

double sample_tilted_unilateral_stable(double beta, double tilt, RngStream& rng,
                                       TiltedStableCounters* counters) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("tilted stable: beta must be in (0,1]");
  if (tilt < 0.0) throw std::invalid_argument("tilted stable: tilt must be >= 0");
  if (beta == 1.0) {
    // S+(1) degenerates to the constant 1 and tilting leaves it unchanged
    if (counters) {
      ++counters->outer_trials;
      ++counters->accepts;
    }
    return 1.0;
  }
  if (tilt <= 1.0) {
    // plain rejection against the untilted stable; acceptance >= 1/e here
    for (;;) {
      if (counters) ++counters->outer_trials;
      const double s = sample_unilateral_stable(beta, rng);
      if (rng.uniform() <= std::exp(-tilt * s)) {
        if (counters) ++counters->accepts;
        return s;
      }
    }
  }
  return tilted_stable_double_rejection(beta, tilt, rng, counters);
}

std::vector<double> sample_poisson_times_logintensity(double a, double lambda,
                                                      double eps,
                                                      RngStream& rng) {
  if (!(a > 1.0))
    throw std::invalid_argument("poisson times: a must be > 1");
  if (!(lambda > 0.0))
    throw std::invalid_argument("poisson times: lambda must be > 0");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("poisson times: eps must be in (0,1)");

  const long n0 = static_cast<long>(
      std::ceil(-std::log(eps) / std::log1p(2.0 / lambda)));
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n0));
  double log_prod = 0.0; // -ln(U1...Un), accumulated in log space
  for (long n = 0; n < n0; ++n) {
    log_prod += rng.exponential();
    times.push_back(a * std::exp(log_prod / lambda));
  }
  return times;
}

long sample_poisson_count(double mean, RngStream& rng) {
  if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  long n = 0;
  double acc = rng.exponential();
  while (acc <= mean) {
    ++n;
    acc += rng.exponential();
  }
  return n;
}

double sample_compound_poisson(double intensity,
                               const std::function<double(RngStream&)>& jump,
                               RngStream& rng) {
  const long n = sample_poisson_count(intensity, rng);
  double sum = 0.0;
  for (long i = 0; i < n; ++i) sum += jump(rng);
  return sum;
}

} // namespace stsim
