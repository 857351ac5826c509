#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gcg {

// Deterministic random source.  Wraps mt19937_64 but performs all range
// reduction itself (rejection sampling for integers, explicit 53-bit
// mantissa fill for doubles) so that sequences are reproducible across
// standard library implementations.
//
// Independent streams are derived by label: split(seed, "sim/W/C/17")
// hashes the label into the master seed, so workers can draw from their
// own stream with no coordination and results do not depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Derives a child stream from a master seed and a textual label.
  static Rng split(std::uint64_t master_seed, std::string_view label);

  // Raw 64 random bits.
  std::uint64_t bits() { return engine_(); }

  // Uniform integer in [0, bound).  bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1).
  double uniform();

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Fair coin.
  bool coin() { return (bits() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

// FNV-1a over bytes; used for stream labels and config fingerprints.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gcg
