#pragma once

#include <cstdint>

namespace qamtrack {

// SplitMix64 finalizer; every seed derivation in the project goes through it.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Splittable counter-based derivation: children with distinct stream indices
// are independent, so the hierarchy master -> training set -> probe -> read
// never aliases and is stable under parallel execution.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::uint64_t stream) noexcept {
  return mix64(parent ^ mix64(stream ^ 0xd1b54a32d192ed03ULL));
}

// Self-contained SplitMix64 generator. Deliberately avoids <random>
// distributions so that streams are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() noexcept { return (next_u64() >> 11) * 0x1.0p-53; }

  // Near-uniform in [0, n) via 128-bit multiply-shift (bias ~ n / 2^64).
  std::uint64_t next_below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) noexcept { return next_double() < p; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_double();
  }

  int sign() noexcept { return (next_u64() & 1ULL) ? +1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace qamtrack
