#include <doctest.h>

#include <cmath>

#include "qamtrack/corruption.hpp"
#include "qamtrack/pattern.hpp"
#include "qamtrack/rng.hpp"

using namespace qamtrack;

namespace {

BitPattern bits(std::vector<std::uint8_t> v) { return BitPattern(std::move(v)); }

BitPattern random_pattern(Index n, Rng& rng) {
  return BitPattern::random(n, 0.5, rng);
}

}  // namespace

TEST_CASE("bipolar encoding follows the fixed convention") {
  const BipolarPattern b = to_bipolar(bits({1, 0, 1}));
  CHECK(b[0] == 1.0);
  CHECK(b[1] == -1.0);
  CHECK(b[2] == 1.0);

  const BipolarPattern zeros = to_bipolar(BitPattern::zeros(24));
  for (Index i = 0; i < 24; ++i) CHECK(zeros[i] == -1.0);
}

TEST_CASE("bipolar round trip is exact") {
  // Exhaustive for short patterns, randomized beyond.
  for (Index v = 1; v <= 12; ++v) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << v); ++code) {
      std::vector<std::uint8_t> raw(static_cast<std::size_t>(v));
      for (Index i = 0; i < v; ++i) raw[static_cast<std::size_t>(i)] = (code >> i) & 1;
      const BitPattern p = bits(raw);
      CHECK(from_bipolar(to_bipolar(p)) == p);
    }
  }
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const BitPattern p = random_pattern(64, rng);
    CHECK(from_bipolar(to_bipolar(p)) == p);
  }
}

TEST_CASE("hamming distance") {
  CHECK(hamming(bits({0, 1}), bits({0, 1})) == 0);
  CHECK(hamming(bits({0, 1, 1}), bits({1, 1, 0})) == 2);
  Rng rng(7);
  const BitPattern x = random_pattern(20, rng);
  CHECK(hamming(x, complement(x)) == x.size());
  CHECK_THROWS_AS(hamming(bits({0, 1}), bits({0, 1, 1})), std::invalid_argument);
}

TEST_CASE("bit strings are most-significant-segment-first") {
  const BitPattern p = bits({1, 1, 0, 0});  // segments 0 and 1 set
  CHECK(to_bit_string(p) == "0011");
  CHECK(bit_pattern_from_string("0011") == p);
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const BitPattern q = random_pattern(17, rng);
    CHECK(bit_pattern_from_string(to_bit_string(q)) == q);
  }
  CHECK_THROWS(bit_pattern_from_string("01x"));
}

TEST_CASE("noise flips only zero bits") {
  Rng rng(1);
  const BitPattern p = bits({1, 0, 1, 0, 0, 0, 1});

  SUBCASE("gamma = 0 leaves the pattern alone") {
    Rng r(2);
    CHECK(apply_noise(p, 0.0, r) == p);
  }
  SUBCASE("gamma = 1 sets everything") {
    Rng r(2);
    CHECK(apply_noise(p, 1.0, r) == BitPattern::ones(p.size()));
  }
  SUBCASE("set bits survive") {
    for (int trial = 0; trial < 2000; ++trial) {
      const BitPattern noisy = apply_noise(p, 0.5, rng);
      for (Index i = 0; i < p.size(); ++i) {
        if (p[i] == 1) CHECK(noisy[i] == 1);
      }
    }
  }
  SUBCASE("out-of-range gamma is rejected") {
    CHECK_THROWS_AS(apply_noise(p, -0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(apply_noise(p, 1.1, rng), std::invalid_argument);
  }
}

TEST_CASE("noise rate matches the binomial mean") {
  // 54-segment pattern with 3 hits: 51 zero bits, gamma = 0.04.
  BitPattern p = BitPattern::zeros(54);
  p.set(3, 1);
  p.set(20, 1);
  p.set(41, 1);
  const int trials = 100000;
  Rng rng(1234);
  double flips = 0.0;
  for (int t = 0; t < trials; ++t) {
    flips += static_cast<double>(apply_noise(p, 0.04, rng).count() - 3);
  }
  const double mean = flips / trials;
  const double expected = 51 * 0.04;
  const double band = 3.0 * std::sqrt(51 * 0.04 * 0.96 / trials);
  CHECK(std::abs(mean - expected) < band);
}

TEST_CASE("inefficiency clears only hit bits") {
  const BitPattern p = bits({1, 0, 1, 1, 0});

  SUBCASE("eta = 1 is a perfect detector") {
    Rng r(5);
    CHECK(apply_inefficiency(p, 1.0, r) == p);
  }
  SUBCASE("eta = 0 drops every hit") {
    Rng r(5);
    CHECK(apply_inefficiency(p, 0.0, r) == BitPattern::zeros(p.size()));
  }
  SUBCASE("zero bits stay zero") {
    Rng r(6);
    for (int trial = 0; trial < 2000; ++trial) {
      const BitPattern out = apply_inefficiency(p, 0.5, r);
      for (Index i = 0; i < p.size(); ++i) {
        if (p[i] == 0) CHECK(out[i] == 0);
      }
    }
  }
  SUBCASE("out-of-range eta is rejected") {
    Rng r(6);
    CHECK_THROWS_AS(apply_inefficiency(p, 1.5, r), std::invalid_argument);
  }
}

TEST_CASE("inefficiency drop rate matches binomial(3, 0.08)") {
  BitPattern p = BitPattern::zeros(54);
  p.set(0, 1);
  p.set(25, 1);
  p.set(53, 1);
  const int trials = 100000;
  Rng rng(77);
  double drops = 0.0;
  for (int t = 0; t < trials; ++t) {
    drops += static_cast<double>(3 - apply_inefficiency(p, 0.92, rng).count());
  }
  const double mean = drops / trials;
  const double band = 3.0 * std::sqrt(3 * 0.08 * 0.92 / trials);
  CHECK(std::abs(mean - 0.24) < band);
}

TEST_CASE("background generation") {
  PatternLibrary lib(24, 0);
  BitPattern signal = BitPattern::zeros(24);
  signal.set(1, 1);
  signal.set(9, 1);
  signal.set(17, 1);
  lib.add(KeyedPattern{BitPattern{}, signal}, PatternKind::Signal);

  SUBCASE("fill_prob = 0 gives the all-zero pattern") {
    Rng rng(4);
    CHECK(generate_background(24, 0.0, lib, rng) == BitPattern::zeros(24));
  }
  SUBCASE("mean popcount matches Bernoulli(0.15)") {
    Rng rng(42);
    const int trials = 100000;
    double bits_set = 0.0;
    for (int t = 0; t < trials; ++t) {
      bits_set += static_cast<double>(generate_background(24, 0.15, lib, rng).count());
    }
    const double mean = bits_set / trials;
    const double band = 3.0 * std::sqrt(24 * 0.15 * 0.85 / trials);
    CHECK(std::abs(mean - 3.6) < band);
  }
  SUBCASE("every draw differs from every stored value") {
    Rng rng(9);
    for (int t = 0; t < 500; ++t) {
      const BitPattern bg = generate_background(24, 0.15, lib, rng);
      for (Index i = 0; i < lib.size(); ++i) {
        CHECK(hamming(bg, lib.pattern(i).value) >= 1);
      }
    }
  }
  SUBCASE("saturated pattern space fails") {
    PatternLibrary full(2, 0);
    for (std::uint8_t a = 0; a < 2; ++a) {
      for (std::uint8_t b = 0; b < 2; ++b) {
        full.add(KeyedPattern{BitPattern{}, bits({a, b})}, PatternKind::Signal);
      }
    }
    Rng rng(1);
    CHECK_THROWS_AS(generate_background(2, 0.5, full, rng, 100), std::runtime_error);
  }
}

TEST_CASE("randomized operations are deterministic under the seed") {
  const BitPattern p = bits({1, 0, 0, 1, 0, 0, 0, 1});
  Rng a(31), b(31);
  for (int t = 0; t < 20; ++t) {
    CHECK(apply_noise(p, 0.3, a) == apply_noise(p, 0.3, b));
    CHECK(apply_inefficiency(p, 0.7, a) == apply_inefficiency(p, 0.7, b));
  }
}

TEST_CASE("keyed pattern assembly") {
  const KeyedPattern kp = assemble_keyed(bits({1}), bits({0, 1}));
  CHECK(kp.size() == 3);
  CHECK(kp.key_size() == 1);
  const BipolarPattern b = to_bipolar(kp);  // key bits first
  CHECK(b[0] == 1.0);
  CHECK(b[1] == -1.0);
  CHECK(b[2] == 1.0);

  const KeyedPattern unkeyed = assemble_keyed(BitPattern{}, bits({0, 1, 1}));
  CHECK(unkeyed.size() == 3);
  CHECK(unkeyed.key_size() == 0);
}

TEST_CASE("library enforces width and distinct values") {
  PatternLibrary lib(3, 0);
  lib.add(KeyedPattern{BitPattern{}, bits({1, 0, 0})}, PatternKind::Signal);
  CHECK_THROWS_AS(lib.add(KeyedPattern{BitPattern{}, bits({1, 0, 0})},
                          PatternKind::Background),
                  std::invalid_argument);
  CHECK_THROWS_AS(lib.add(KeyedPattern{BitPattern{}, bits({1, 0})},
                          PatternKind::Signal),
                  std::invalid_argument);
  lib.add(KeyedPattern{BitPattern{}, bits({0, 1, 0})}, PatternKind::Background);
  CHECK(lib.signal_count() == 1);
  CHECK(lib.background_count() == 1);
  CHECK(lib.signal_density() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("with_keys assigns signal key 1 and background key 0") {
  PatternLibrary lib(3, 0);
  lib.add(KeyedPattern{BitPattern{}, bits({1, 0, 0})}, PatternKind::Signal);
  lib.add(KeyedPattern{BitPattern{}, bits({0, 1, 0})}, PatternKind::Background);
  const PatternLibrary keyed = with_keys(lib);
  CHECK(keyed.key_length() == 1);
  CHECK(keyed.pattern_length() == 4);
  CHECK(keyed.pattern(0).key[0] == 1);
  CHECK(keyed.pattern(1).key[0] == 0);
  // Bipolar layout: signal key maps to +1, background to -1.
  CHECK(keyed.encoded(0)[0] == 1.0);
  CHECK(keyed.encoded(1)[0] == -1.0);
}
