#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <random>

namespace wbkin {

/// All randomness in the library flows through this engine type. Streams are
/// derived from a single 64-bit seed (see make_stream) so batch results are
/// reproducible and independent of scheduling.
using Rng = std::mt19937_64;

/// splitmix64 finalizer; spreads low-entropy seeds before engine construction.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over raw bytes; used to derive per-record streams from content so
/// batch metrics are invariant under input reordering.
inline std::uint64_t fnv1a(const void* data, std::size_t size,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t hash_double(double v, std::uint64_t h) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  return fnv1a(&bits, sizeof(bits), h);
}

/// Stream derivation rule: engine state = mt19937_64(splitmix64(seed)).
/// Sub-streams use seed ^ index (grids) or seed ^ content-hash (batches).
inline Rng make_stream(std::uint64_t seed) { return Rng(splitmix64(seed)); }

inline Rng make_stream(std::uint64_t seed, std::uint64_t subseed) {
  return make_stream(seed ^ subseed);
}

/// Uniform double in [0, 1) built from the top 53 bits of the engine output.
/// std::uniform_real_distribution is implementation-defined; this is not.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Standard normal via Box-Muller. Consumes exactly two engine draws.
inline double normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline double normal(Rng& rng, double stddev) { return stddev * normal(rng); }

}  // namespace wbkin
