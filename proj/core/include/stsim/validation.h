#ifndef STSIM_VALIDATION_H
#define STSIM_VALIDATION_H

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stsim/model.h"
#include "stsim/points.h"
#include "stsim/rng.h"

namespace stsim {

enum class VariogramMode {
  SpatialAtFixedTimeLag,  // lag grid = distances along the first axis
  TemporalAtFixedSpaceLag // lag grid = time lags, fixed spatial offset
};

struct EmpiricalVariogram {
  std::vector<double> lags;
  std::vector<double> values; // method-of-moments semivariances
  std::vector<long> pair_counts;
};

/// Sample variogram of a gridded field: 1/2 mean[(Z(s,t) - Z(s+h,t+u))^2]
/// per lag. Spatial mode: fixed_lag = {u}, lag_grid holds distances along
/// the first spatial axis. Temporal mode: fixed_lag is the k-vector
/// spatial lag, lag_grid holds time lags. Every lag must be representable
/// on the grid (an integer number of mesh steps).
EmpiricalVariogram empirical_variogram(const FieldRealization& field,
                                       VariogramMode mode,
                                       const std::vector<double>& fixed_lag,
                                       const std::vector<double>& lag_grid);

enum class TransformKind { Characteristic, Laplace };

struct OracleReport {
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Monte-Carlo transform check: draws n_draws samples and compares the
/// empirical characteristic function (real part) or Laplace transform
/// with the analytic one on the argument grid. Passes iff the max
/// absolute error is within 4/sqrt(n_draws).
OracleReport transform_oracle(const std::function<double(RngStream&)>& sampler,
                              const std::function<double(double)>& analytic,
                              TransformKind kind,
                              const std::vector<double>& args, long n_draws,
                              RngStream& rng);

struct DimpleReport {
  bool has_dimple = false;
  double argmax_u = 0.0;
};

/// Hole-effect scan: true iff u -> C(h,u) attains, somewhere on the grid,
/// a value exceeding C(h,0) by more than 1e-9.
DimpleReport detect_dimple(const GneitingModel& model,
                           std::span<const double> h,
                           const std::vector<double>& u_grid);

struct NormalityReport {
  double ad_statistic = 0.0;
  double ks_statistic = 0.0;
  bool pass = false;
};

/// Anderson-Darling (and Kolmogorov-Smirnov) test of the pooled values
/// against the standard normal, at significance 0.01.
NormalityReport normality_report(std::span<const double> values);
NormalityReport normality_report(const std::vector<FieldRealization>& fields);

/// Two-sample Kolmogorov-Smirnov statistic (used for the cross-method
/// frequency consistency check).
double two_sample_ks_statistic(std::vector<double> a, std::vector<double> b);

struct VariogramBandRow {
  double lag = 0.0;
  double mean = 0.0;
  double band = 0.0; // 3 standard errors across realizations
  double theory = 0.0;
};

/// Reduce per-realization empirical variograms to mean +/- 3 s.e. rows,
/// next to the theoretical semivariance 1 - C.
std::vector<VariogramBandRow> summarize_variograms(
    const std::vector<EmpiricalVariogram>& reps,
    const std::function<double(double)>& theory);

void write_band_report_csv(const std::string& path,
                           const std::vector<VariogramBandRow>& rows);

} // namespace stsim

#endif
