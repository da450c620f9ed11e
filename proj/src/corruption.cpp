#include "qamtrack/corruption.hpp"

#include <stdexcept>

namespace qamtrack {

BitPattern apply_noise(const BitPattern& p, double gamma, Rng& rng) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("apply_noise: gamma must lie in [0, 1]");
  }
  std::vector<std::uint8_t> bits = p.bits();
  for (auto& b : bits) {
    if (b == 0 && rng.bernoulli(gamma)) b = 1;
  }
  return BitPattern(std::move(bits));
}

BitPattern apply_inefficiency(const BitPattern& p, double eta, Rng& rng) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("apply_inefficiency: eta must lie in [0, 1]");
  }
  const double drop_prob = 1.0 - eta;
  std::vector<std::uint8_t> bits = p.bits();
  for (auto& b : bits) {
    if (b == 1 && rng.bernoulli(drop_prob)) b = 0;
  }
  return BitPattern(std::move(bits));
}

BitPattern generate_background(Index value_length, double fill_prob,
                               const PatternLibrary& library, Rng& rng,
                               int max_tries) {
  if (!(fill_prob >= 0.0 && fill_prob <= 1.0)) {
    throw std::invalid_argument("generate_background: fill_prob must lie in [0, 1]");
  }
  if (library.value_length() != value_length) {
    throw std::invalid_argument("generate_background: library value length mismatch");
  }
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    BitPattern candidate = BitPattern::random(value_length, fill_prob, rng);
    if (!library.contains_value(candidate)) return candidate;
  }
  throw std::runtime_error(
      "generate_background: no distinct pattern found within max_tries "
      "(pattern space saturated)");
}

}  // namespace qamtrack
