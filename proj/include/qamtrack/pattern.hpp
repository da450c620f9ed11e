#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qamtrack/particle.hpp"
#include "qamtrack/rng.hpp"
#include "qamtrack/types.hpp"

namespace qamtrack {

// Binary hit map: one bit per detector segment. Empty patterns are permitted
// only as the key part of an un-keyed pattern; everywhere else length > 0.
class BitPattern {
 public:
  BitPattern() = default;
  explicit BitPattern(std::vector<std::uint8_t> bits);

  static BitPattern zeros(Index n);
  static BitPattern ones(Index n);
  // i.i.d. Bernoulli(fill_prob) bits.
  static BitPattern random(Index n, double fill_prob, Rng& rng);

  Index size() const { return static_cast<Index>(bits_.size()); }
  bool empty() const { return bits_.empty(); }
  int operator[](Index i) const { return bits_[static_cast<std::size_t>(i)]; }
  void set(Index i, int v);
  Index count() const;  // popcount

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const BitPattern&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// +/-1 spin vector; the solver-facing twin of BitPattern.
class BipolarPattern {
 public:
  BipolarPattern() = default;
  explicit BipolarPattern(Vector spins);

  Index size() const { return spins_.size(); }
  Scalar operator[](Index i) const { return spins_[i]; }
  const Vector& spins() const { return spins_; }

  bool operator==(const BipolarPattern& other) const {
    return spins_.size() == other.spins_.size() && spins_ == other.spins_;
  }

 private:
  Vector spins_;
};

// Fixed encoding: bit 1 <-> spin +1, bit 0 <-> spin -1. Exact bijection.
BipolarPattern to_bipolar(const BitPattern& p);
BitPattern from_bipolar(const BipolarPattern& p);

// Count of differing positions; throws on length mismatch.
Index hamming(const BitPattern& a, const BitPattern& b);

BitPattern complement(const BitPattern& p);

// Fixed-width most-significant-segment-first text form: the first character
// is the highest-index segment. Round-trips exactly.
std::string to_bit_string(const BitPattern& p);
BitPattern bit_pattern_from_string(const std::string& s);

// Key/value pair; the bipolar layout is key bits first, then value bits.
// K = 0 (empty key) denotes an un-keyed pattern.
struct KeyedPattern {
  BitPattern key;
  BitPattern value;

  Index key_size() const { return key.size(); }
  Index value_size() const { return value.size(); }
  Index size() const { return key.size() + value.size(); }

  bool operator==(const KeyedPattern&) const = default;
};

KeyedPattern assemble_keyed(BitPattern key, BitPattern value);
BipolarPattern to_bipolar(const KeyedPattern& p);

enum class PatternKind { Signal, Background };

const char* to_string(PatternKind k);
PatternKind pattern_kind_from_string(const std::string& s);

// Encoded training set. All patterns share (K, V) and all value fields are
// pairwise distinct; violations throw at insertion time. Signal patterns may
// carry the particle state that generated them so probes can be regenerated.
class PatternLibrary {
 public:
  PatternLibrary(Index value_length, Index key_length);

  void add(KeyedPattern pattern, PatternKind kind,
           std::optional<ParticleState> source = std::nullopt);

  Index value_length() const { return value_length_; }
  Index key_length() const { return key_length_; }
  Index pattern_length() const { return value_length_ + key_length_; }

  Index size() const { return static_cast<Index>(patterns_.size()); }
  Index signal_count() const { return signal_count_; }
  Index background_count() const { return size() - signal_count_; }

  // alpha_s = p_s / V and alpha_b = p_b / V.
  double signal_density() const;
  double background_density() const;

  const KeyedPattern& pattern(Index i) const;
  PatternKind kind(Index i) const;
  const std::optional<ParticleState>& source(Index i) const;

  BipolarPattern encoded(Index i) const { return to_bipolar(pattern(i)); }
  std::vector<BipolarPattern> encoded_all() const;

  bool contains_value(const BitPattern& value) const;

  std::vector<Index> signal_indices() const;
  std::vector<Index> background_indices() const;

 private:
  Index value_length_ = 0;
  Index key_length_ = 0;
  Index signal_count_ = 0;
  std::vector<KeyedPattern> patterns_;
  std::vector<PatternKind> kinds_;
  std::vector<std::optional<ParticleState>> sources_;
};

// Re-keys a library with K = 1: signal patterns get key bit 1, background
// patterns key bit 0.
PatternLibrary with_keys(const PatternLibrary& lib);

}  // namespace qamtrack
