#ifndef PFLR_RNG_HPP
#define PFLR_RNG_HPP

#include <cstdint>

namespace pflr {

/// Deterministic 64-bit random stream (xoshiro256++ seeded via splitmix64).
/// The draw sequence depends only on the seed, not on the platform or
/// standard library. Streams are single-owner: parallel workers must each
/// hold their own stream.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on [a, b).
  double uniform(double a, double b);

  /// Standard normal via Box-Muller (pairs generated, second value cached).
  double standard_normal();

  /// Skew-normal standardized to population mean 0 and standard deviation
  /// sd. Built from the representation d|N1| + sqrt(1-d^2) N2 with
  /// d = shape / sqrt(1 + shape^2), recentred by its mean d sqrt(2/pi) and
  /// rescaled by its standard deviation.
  double skew_normal(double shape, double sd);

private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Stateless seed derivation for replication streams: a strong mix of
/// (seed, a, b) so distinct tags give unrelated streams deterministically.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace pflr

#endif  // PFLR_RNG_HPP
