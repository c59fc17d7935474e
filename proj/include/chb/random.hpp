#pragma once

// Seeded randomness. All draws go through explicit bit manipulation rather
// than <random> distributions, whose output is implementation-defined, so a
// seed reproduces the same numbers on every standard library.

#include "chb/hermitian.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace chb {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the i-th independent substream: seed xor hash(i).
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t i) { return seed ^ splitmix64(i); }

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Standard normal via Box-Muller (one value per call).
inline double normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline cplx complex_normal(Rng& rng) {
  const double re = normal(rng);
  return {re, normal(rng)};
}

/// Uniformly distributed unit vector of C^2 = R^4.
inline Vec2 random_unit_vector(Rng& rng) {
  Vec2 v;
  do {
    v = Vec2(complex_normal(rng), complex_normal(rng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

inline BoundaryPoint random_boundary_point(Rng& rng) { return BoundaryPoint::normalized(random_unit_vector(rng)); }

/// Uniform (Euclidean) sample of the ball of radius max_radius < 1.
inline BallPoint random_ball_point(Rng& rng, double max_radius = 0.9) {
  const Vec2 dir = random_unit_vector(rng);
  const double r = max_radius * std::pow(uniform01(rng), 0.25);
  return {r * dir(0), r * dir(1)};
}

}  // namespace chb
