#pragma once

#include "qamtrack/pattern.hpp"
#include "qamtrack/rng.hpp"

namespace qamtrack {

// Detector noise: each 0-bit independently becomes 1 with probability gamma;
// set bits are never cleared.
BitPattern apply_noise(const BitPattern& p, double gamma, Rng& rng);

// Detector inefficiency: each 1-bit independently becomes 0 with probability
// (1 - eta); eta = 1 is a perfect detector. Cleared bits are never set.
BitPattern apply_inefficiency(const BitPattern& p, double eta, Rng& rng);

// Random non-track pattern: i.i.d. Bernoulli(fill_prob) bits, rejected until
// it differs from every value stored in the library by at least one bit.
// Throws after max_tries rejections (saturated pattern space).
BitPattern generate_background(Index value_length, double fill_prob,
                               const PatternLibrary& library, Rng& rng,
                               int max_tries = 10000);

}  // namespace qamtrack
