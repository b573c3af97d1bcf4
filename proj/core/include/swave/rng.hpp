#pragma once

#include <cstdint>

namespace swave::rng {

/// Identifier written to run manifests so outputs are reproducible.
inline constexpr const char* kAlgorithm = "counter-mix64/acklam-icdf/q35 v1";

/// Stateless 64-bit mixer (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

/// Counter-based stream: one word per (seed, stream, counter, salt) key.
inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter, std::uint64_t salt = 0) {
  std::uint64_t z = seed;
  z = mix64(z ^ (stream * 0x9e3779b97f4a7c15ULL));
  z = mix64(z ^ (counter * 0xd1b54a32d192ed03ULL));
  z = mix64(z ^ (salt * 0x8cb92ba72f3d8dd7ULL));
  return z;
}

/// Uniform deviate in the open interval (0,1).
inline double uniform01(std::uint64_t word) {
  return (static_cast<double>(word >> 11) + 0.5) * 0x1p-53;
}

/// Inverse of the standard normal CDF (Acklam's rational approximation
/// plus one Halley refinement; absolute error near machine precision).
double normal_icdf(double p);

/// Standard normal deviate for a counter-based key, clamped to |g| <= 10.
double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                std::uint64_t salt = 0);

/// Quantize to the 2^-35 grid. Brownian increments are quantized so window
/// sums of up to ~2^17 terms are exact in double arithmetic, which makes
/// window aggregation associative.
inline double quantize(double x) {
  return static_cast<double>(static_cast<std::int64_t>(x * 0x1p35 + (x >= 0 ? 0.5 : -0.5))) *
         0x1p-35;
}

}  // namespace swave::rng
