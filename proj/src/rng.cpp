#include "pflr/rng.hpp"

#include <cmath>
#include <numbers>

#include "pflr/errors.hpp"

namespace pflr {

namespace {

inline std::uint64_t splitmix64_next(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& s : state_) s = splitmix64_next(sm);
}

std::uint64_t RngStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double a, double b) {
  return a + (b - a) * uniform01();
}

double RngStream::standard_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

double RngStream::skew_normal(double shape, double sd) {
  if (!(sd > 0.0)) throw DomainError("skew_normal: sd must be positive");
  const double delta = shape / std::sqrt(1.0 + shape * shape);
  const double n1 = standard_normal();
  const double n2 = standard_normal();
  const double v = delta * std::fabs(n1) + std::sqrt(1.0 - delta * delta) * n2;
  const double mean = delta * std::sqrt(2.0 / std::numbers::pi);
  const double stddev = std::sqrt(1.0 - 2.0 * delta * delta / std::numbers::pi);
  return sd * (v - mean) / stddev;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = seed;
  std::uint64_t h = splitmix64_next(x);
  x = h ^ (a + 0x9E3779B97F4A7C15ULL);
  h = splitmix64_next(x);
  x = h ^ (b + 0xC2B2AE3D27D4EB4FULL);
  h = splitmix64_next(x);
  return h;
}

}  // namespace pflr
