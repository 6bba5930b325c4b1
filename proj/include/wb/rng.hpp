#pragma once

#include <cstdint>

namespace wb {

// Counter-based random streams: every draw is a pure function of
// (seed, row, sample), so trace content never depends on generation
// order or thread schedule.

// 64-bit finalizer (splittable-generator style avalanche function).
std::uint64_t mix64(std::uint64_t x);

// Combine a seed and two stream coordinates into one hash.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t row, std::uint64_t sample);

// Map a hash to the open interval (0, 1).
double uniform01(std::uint64_t h);

// Inverse standard-normal CDF (rational approximation, |rel err| < 1.2e-9).
double inv_normal_cdf(double p);

// Standard-normal draw addressed by (seed, row, sample).
double gaussian(std::uint64_t seed, std::uint64_t row, std::uint64_t sample);

} // namespace wb
