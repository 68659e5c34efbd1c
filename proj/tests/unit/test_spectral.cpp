#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "stsim/spectral.h"

using namespace stsim;

namespace {

GneitingModel fig_model() {
  return GneitingModel(2, MixtureMeasure::dirac(0.01),
                       VariogramSpec::linear(1.0));
}

GridSpec small_grid() {
  GridSpec g;
  g.origin = {0.0, 0.0};
  g.mesh = {1.0, 0.5};
  g.counts = {7, 5};
  g.t0 = 0.0;
  g.dt = 0.2;
  g.nt = 4;
  return g;
}

} // namespace

TEST_CASE("ensemble build is reproducible and seed sensitive") {
  const GneitingModel model = fig_model();
  const auto a = build_spectral_ensemble(model, 50, 99);
  const auto b = build_spectral_ensemble(model, 50, 99);
  const auto c = build_spectral_ensemble(model, 50, 100);
  REQUIRE(a.components.size() == 50);
  for (int j = 0; j < 50; ++j) {
    REQUIRE(a.components[j].omega == b.components[j].omega);
    REQUIRE(a.components[j].tau == b.components[j].tau);
    REQUIRE(a.components[j].phi == b.components[j].phi);
    REQUIRE(a.components[j].amp == b.components[j].amp);
  }
  REQUIRE(a.components[0].omega != c.components[0].omega);
}

TEST_CASE("component j depends only on (seed, j), not on p") {
  const GneitingModel model = fig_model();
  const auto small = build_spectral_ensemble(model, 10, 7);
  const auto large = build_spectral_ensemble(model, 40, 7);
  for (int j = 0; j < 10; ++j) {
    REQUIRE(small.components[j].omega == large.components[j].omega);
    REQUIRE(small.components[j].tau == large.components[j].tau);
  }
}

TEST_CASE("grid fast path agrees with the generic point path") {
  const GneitingModel model = fig_model();
  const auto ens = build_spectral_ensemble(model, 200, 5);
  const GridSpec g = small_grid();
  const auto grid_pts = SpaceTimePointSet::from_grid(g);

  // same points, handed over as an explicit list
  std::vector<double> coords, times;
  for (std::size_t i = 0; i < grid_pts.size(); ++i) {
    coords.push_back(grid_pts.point(i)[0]);
    coords.push_back(grid_pts.point(i)[1]);
    times.push_back(grid_pts.time(i));
  }
  const SpaceTimePointSet list_pts(2, coords, times);

  const auto fg = evaluate_spectral(ens, grid_pts);
  const auto fl = evaluate_spectral(ens, list_pts);
  REQUIRE(fg.values.size() == fl.values.size());
  for (std::size_t i = 0; i < fg.values.size(); ++i)
    REQUIRE(fg.values[i] == Catch::Approx(fl.values[i]).margin(1e-9));
}

TEST_CASE("evaluation is invariant under the thread count") {
  const GneitingModel model = fig_model();
  const auto ens = build_spectral_ensemble(model, 100, 5);
  const auto pts = SpaceTimePointSet::from_grid(small_grid());
  const auto f1 = evaluate_spectral(ens, pts, 1);
  const auto f3 = evaluate_spectral(ens, pts, 3);
  REQUIRE(f1.values == f3.values);
}

TEST_CASE("spectral path rejects a mixture atom at zero") {
  const GneitingModel model(2, MixtureMeasure::tabulated({{0.0, 0.5}, {1.0, 0.5}}),
                            VariogramSpec::linear(1.0));
  REQUIRE_THROWS_AS(build_spectral_ensemble(model, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("temporal sampler dispatch rejects family mismatches") {
  RngStream rng(1, 1);
  VariogramSpec lin = VariogramSpec::linear(1.0);
  VariogramSpec lg = VariogramSpec::logarithmic(2.06);
  REQUIRE(sample_temporal_frequency(0.0, lin, 0.01, rng) == 0.0);
  REQUIRE_THROWS_AS(sample_temporal_frequency(-1.0, lin, 0.01, rng),
                    std::invalid_argument);
  lg.set_strategy(SamplerStrategy::ShotNoiseGeneric);
  REQUIRE_NOTHROW(sample_temporal_frequency(1.0, lg, 0.01, rng));
  // compound Poisson path requires boundedness
  VariogramSpec bounded = VariogramSpec::table_entry("exp_bounded");
  REQUIRE(bounded.strategy() == SamplerStrategy::CompoundPoisson);
  REQUIRE_NOTHROW(sample_temporal_frequency(1.0, bounded, 0.01, rng));
}

TEST_CASE("spatial frequency needs a positive scale") {
  RngStream rng(1, 1);
  REQUIRE_THROWS_AS(sample_spatial_frequency(0.0, 2, rng),
                    std::invalid_argument);
  const auto v = sample_spatial_frequency(1.5, 3, rng);
  REQUIRE(v.size() == 3);
}

TEST_CASE("field values have unit variance on average") {
  const GneitingModel model = fig_model();
  const auto ens = build_spectral_ensemble(model, 2000, 21);
  GridSpec g;
  g.origin = {0.0, 0.0};
  g.mesh = {40.0, 40.0}; // far apart, nearly independent values
  g.counts = {30, 30};
  g.nt = 1;
  const auto field = evaluate_spectral(ens, SpaceTimePointSet::from_grid(g));
  double m2 = 0.0;
  for (double v : field.values) m2 += v * v;
  m2 /= static_cast<double>(field.values.size());
  REQUIRE(m2 == Catch::Approx(1.0).margin(0.15));
  REQUIRE(field.provenance.method == "spectral");
  REQUIRE(field.provenance.p == 2000);
}
