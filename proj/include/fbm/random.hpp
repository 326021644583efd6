#pragma once

#include <cstdint>
#include <random>

namespace fbm {

/// splitmix64 finalizer; full-avalanche mixing of a 64-bit value.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed k of a master seed: derive(master, k) = mix64(master ^ mix64(k)).
/// Fixed scheme so independently generated streams (samples, repeats) are
/// reproducible regardless of generation order or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
  return mix64(master ^ mix64(k));
}

/// Seeded random source. Wraps std::mt19937_64 (bit-exact engine across
/// platforms) and hand-rolls the bounded draws, since the standard
/// distributions are not guaranteed to produce identical streams everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Fair coin.
  bool coin() { return (next() & 1ULL) != 0; }

  /// Unbiased draw from [0, n). Rejection method on the raw 64-bit stream.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0ULL - bound) % bound;  // 2^64 mod n
    std::uint64_t r = next();
    while (r < threshold) r = next();
    return static_cast<std::size_t>(r % bound);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fbm
