#include "stsim/validation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace stsim {

namespace {

// nearest integer number of steps, rejecting off-grid lags
long steps_on_grid(double lag, double step, const char* what) {
  const double q = lag / step;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
    throw std::invalid_argument(std::string("empirical variogram: ") + what +
                                " lag is not a multiple of the grid step");
  return static_cast<long>(r);
}

double standard_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

} // namespace

EmpiricalVariogram empirical_variogram(const FieldRealization& field,
                                       VariogramMode mode,
                                       const std::vector<double>& fixed_lag,
                                       const std::vector<double>& lag_grid) {
  if (!field.points.grid())
    throw std::invalid_argument("empirical variogram: field must be gridded");
  const GridSpec& g = *field.points.grid();
  const int k = g.dim();

  // index strides, first spatial axis fastest, time slowest
  std::vector<std::size_t> stride(k + 1);
  stride[0] = 1;
  for (int d = 1; d < k; ++d)
    stride[d] = stride[d - 1] * static_cast<std::size_t>(g.counts[d - 1]);
  stride[k] = stride[k - 1] * static_cast<std::size_t>(g.counts[k - 1]);

  // fixed part of the pair offset
  std::vector<long> fixed_steps(k + 1, 0); // per axis, last entry = time
  if (mode == VariogramMode::SpatialAtFixedTimeLag) {
    if (fixed_lag.size() != 1)
      throw std::invalid_argument("empirical variogram: spatial mode takes one fixed time lag");
    fixed_steps[k] = steps_on_grid(fixed_lag[0], g.dt, "time");
  } else {
    if (static_cast<int>(fixed_lag.size()) != k)
      throw std::invalid_argument("empirical variogram: temporal mode takes a k-vector spatial lag");
    for (int d = 0; d < k; ++d)
      fixed_steps[d] = steps_on_grid(fixed_lag[d], g.mesh[d], "spatial");
  }

  EmpiricalVariogram out;
  out.lags = lag_grid;
  out.values.assign(lag_grid.size(), 0.0);
  out.pair_counts.assign(lag_grid.size(), 0);

  const std::vector<double>& z = field.values;
  for (std::size_t li = 0; li < lag_grid.size(); ++li) {
    std::vector<long> steps = fixed_steps;
    if (mode == VariogramMode::SpatialAtFixedTimeLag)
      steps[0] = steps_on_grid(lag_grid[li], g.mesh[0], "spatial");
    else
      steps[k] = steps_on_grid(lag_grid[li], g.dt, "time");

    // extents of the lower corner so both pair members stay in the grid
    std::vector<int> ext(k + 1);
    bool empty = false;
    for (int d = 0; d <= k; ++d) {
      const int n = d < k ? g.counts[d] : g.nt;
      const int e = n - static_cast<int>(std::abs(steps[d]));
      if (e <= 0) empty = true;
      ext[d] = e;
    }
    if (empty) continue;

    std::size_t off = 0;
    std::size_t base = 0;
    for (int d = 0; d <= k; ++d) {
      if (steps[d] >= 0)
        off += static_cast<std::size_t>(steps[d]) * stride[d];
      else
        base += static_cast<std::size_t>(-steps[d]) * stride[d];
    }

    double acc = 0.0;
    long count = 0;
    std::vector<int> idx(k + 1, 0);
    for (;;) {
      std::size_t at = base;
      for (int d = 0; d <= k; ++d)
        at += static_cast<std::size_t>(idx[d]) * stride[d];
      const double diff = z[at] - z[at + off];
      acc += diff * diff;
      ++count;
      int d = 0;
      while (d <= k && ++idx[d] == ext[d]) idx[d++] = 0;
      if (d > k) break;
    }
    out.values[li] = 0.5 * acc / static_cast<double>(count);
    out.pair_counts[li] = count;
  }
  return out;
}

OracleReport transform_oracle(const std::function<double(RngStream&)>& sampler,
                              const std::function<double(double)>& analytic,
                              TransformKind kind,
                              const std::vector<double>& args, long n_draws,
                              RngStream& rng) {
  if (n_draws < 1)
    throw std::invalid_argument("transform oracle: n_draws must be >= 1");
  std::vector<double> acc(args.size(), 0.0);
  for (long i = 0; i < n_draws; ++i) {
    const double x = sampler(rng);
    for (std::size_t j = 0; j < args.size(); ++j)
      acc[j] += kind == TransformKind::Characteristic ? std::cos(args[j] * x)
                                                      : std::exp(-args[j] * x);
  }
  OracleReport rep;
  rep.tolerance = 4.0 / std::sqrt(static_cast<double>(n_draws));
  for (std::size_t j = 0; j < args.size(); ++j) {
    const double err = std::abs(acc[j] / n_draws - analytic(args[j]));
    rep.max_abs_error = std::max(rep.max_abs_error, err);
  }
  rep.pass = rep.max_abs_error <= rep.tolerance;
  return rep;
}

DimpleReport detect_dimple(const GneitingModel& model,
                           std::span<const double> h,
                           const std::vector<double>& u_grid) {
  if (u_grid.empty())
    throw std::invalid_argument("dimple scan: empty time-lag grid");
  const double c0 = model.covariance(h, 0.0);
  DimpleReport rep;
  double best = c0;
  rep.argmax_u = 0.0;
  for (double u : u_grid) {
    const double c = model.covariance(h, u);
    if (c > best) {
      best = c;
      rep.argmax_u = u;
    }
  }
  rep.has_dimple = best > c0 + 1e-9;
  return rep;
}

NormalityReport normality_report(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 8)
    throw std::invalid_argument("normality report: too few values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  NormalityReport rep;
  double a2 = 0.0;
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = standard_normal_cdf(sorted[i]);
    f = std::min(std::max(f, 1e-300), 1.0 - 1e-16);
    const double fi = standard_normal_cdf(sorted[n - 1 - i]);
    const double g = std::min(std::max(1.0 - fi, 1e-300), 1.0);
    a2 += (2.0 * static_cast<double>(i) + 1.0) * (std::log(f) + std::log(g));
    ks = std::max(ks, std::max(static_cast<double>(i + 1) / n - f,
                               f - static_cast<double>(i) / n));
  }
  rep.ad_statistic = -static_cast<double>(n) - a2 / static_cast<double>(n);
  rep.ks_statistic = ks;
  // asymptotic 1% critical values for a fully specified null
  rep.pass = rep.ad_statistic < 3.857 &&
             rep.ks_statistic < 1.628 / std::sqrt(static_cast<double>(n));
  return rep;
}

NormalityReport normality_report(const std::vector<FieldRealization>& fields) {
  std::vector<double> pooled;
  for (const FieldRealization& f : fields)
    pooled.insert(pooled.end(), f.values.begin(), f.values.end());
  return normality_report(pooled);
}

double two_sample_ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("two-sample KS: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

std::vector<VariogramBandRow> summarize_variograms(
    const std::vector<EmpiricalVariogram>& reps,
    const std::function<double(double)>& theory) {
  if (reps.empty())
    throw std::invalid_argument("variogram summary: no realizations");
  const std::size_t nlag = reps.front().lags.size();
  for (const EmpiricalVariogram& r : reps)
    if (r.lags != reps.front().lags)
      throw std::invalid_argument("variogram summary: mismatched lag grids");

  const double n = static_cast<double>(reps.size());
  std::vector<VariogramBandRow> rows(nlag);
  for (std::size_t li = 0; li < nlag; ++li) {
    double mean = 0.0;
    for (const EmpiricalVariogram& r : reps) mean += r.values[li];
    mean /= n;
    double var = 0.0;
    for (const EmpiricalVariogram& r : reps) {
      const double d = r.values[li] - mean;
      var += d * d;
    }
    var = reps.size() > 1 ? var / (n - 1.0) : 0.0;
    rows[li].lag = reps.front().lags[li];
    rows[li].mean = mean;
    rows[li].band = 3.0 * std::sqrt(var / n);
    rows[li].theory = theory(rows[li].lag);
  }
  return rows;
}

void write_band_report_csv(const std::string& path,
                           const std::vector<VariogramBandRow>& rows) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open report file: " + path);
  out << "lag,mean,band,theory\n";
  char buf[128];
  for (const VariogramBandRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g\n", r.lag, r.mean,
                  r.band, r.theory);
    out << buf;
  }
}

} // namespace stsim
