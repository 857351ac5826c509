#include "gcg/rng.hpp"

#include <stdexcept>

namespace gcg {

namespace {

// splitmix64 finalizer; decorrelates seed/label mixtures.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng Rng::split(std::uint64_t master_seed, std::string_view label) {
  return Rng(mix64(master_seed ^ mix64(fnv1a64(label))));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Rejection sampling over the largest multiple of bound that fits in 64
  // bits; keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = bits();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform() {
  // 53 mantissa bits -> uniform on [0, 1) with full double resolution.
  return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

}  // namespace gcg
