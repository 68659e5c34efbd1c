#ifndef STSIM_RNG_H
#define STSIM_RNG_H

#include <array>
#include <cstdint>

namespace stsim {

/// Reproducible random stream identified by (seed, stream_id).
///
/// Distinct (seed, stream_id) pairs yield statistically independent
/// sequences; identical pairs reproduce bit-identical sequences. The
/// generator is xoshiro256++ with the state derived from the pair
/// through splitmix64, so streams can be created in any order.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform();
  double uniform(double a, double b);

  /// Standard normal via Box-Muller. Consumes two uniforms per call so
  /// the draw sequence has no hidden cache state.
  double normal();

  /// Exponential with rate 1.
  double exponential();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

private:
  std::array<std::uint64_t, 4> s_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

} // namespace stsim

#endif
