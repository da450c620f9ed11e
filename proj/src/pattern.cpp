#include "qamtrack/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace qamtrack {

BitPattern::BitPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("BitPattern: bits must be 0 or 1");
  }
}

BitPattern BitPattern::zeros(Index n) {
  return BitPattern(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0));
}

BitPattern BitPattern::ones(Index n) {
  return BitPattern(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1));
}

BitPattern BitPattern::random(Index n, double fill_prob, Rng& rng) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (auto& b : bits) b = rng.bernoulli(fill_prob) ? 1 : 0;
  return BitPattern(std::move(bits));
}

void BitPattern::set(Index i, int v) {
  if (v != 0 && v != 1) throw std::invalid_argument("BitPattern::set: bit must be 0 or 1");
  bits_.at(static_cast<std::size_t>(i)) = static_cast<std::uint8_t>(v);
}

Index BitPattern::count() const {
  return static_cast<Index>(std::count(bits_.begin(), bits_.end(), 1));
}

BipolarPattern::BipolarPattern(Vector spins) : spins_(std::move(spins)) {
  for (Index i = 0; i < spins_.size(); ++i) {
    if (spins_[i] != 1.0 && spins_[i] != -1.0) {
      throw std::invalid_argument("BipolarPattern: spins must be +1 or -1");
    }
  }
}

BipolarPattern to_bipolar(const BitPattern& p) {
  Vector spins(p.size());
  for (Index i = 0; i < p.size(); ++i) spins[i] = p[i] ? 1.0 : -1.0;
  return BipolarPattern(std::move(spins));
}

BitPattern from_bipolar(const BipolarPattern& p) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(p.size()));
  for (Index i = 0; i < p.size(); ++i) {
    bits[static_cast<std::size_t>(i)] = p[i] > 0 ? 1 : 0;
  }
  return BitPattern(std::move(bits));
}

Index hamming(const BitPattern& a, const BitPattern& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming: pattern lengths differ");
  }
  Index d = 0;
  for (Index i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

BitPattern complement(const BitPattern& p) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(p.size()));
  for (Index i = 0; i < p.size(); ++i) {
    bits[static_cast<std::size_t>(i)] = p[i] ? 0 : 1;
  }
  return BitPattern(std::move(bits));
}

std::string to_bit_string(const BitPattern& p) {
  std::string s(static_cast<std::size_t>(p.size()), '0');
  for (Index i = 0; i < p.size(); ++i) {
    // Most significant segment first: segment V-1 is the leading character.
    s[static_cast<std::size_t>(p.size() - 1 - i)] = p[i] ? '1' : '0';
  }
  return s;
}

BitPattern bit_pattern_from_string(const std::string& s) {
  const Index n = static_cast<Index>(s.size());
  std::vector<std::uint8_t> bits(s.size());
  for (Index i = 0; i < n; ++i) {
    const char c = s[static_cast<std::size_t>(n - 1 - i)];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit_pattern_from_string: expected 0/1 characters");
    }
    bits[static_cast<std::size_t>(i)] = c == '1' ? 1 : 0;
  }
  return BitPattern(std::move(bits));
}

KeyedPattern assemble_keyed(BitPattern key, BitPattern value) {
  if (value.empty()) throw std::invalid_argument("assemble_keyed: empty value");
  return KeyedPattern{std::move(key), std::move(value)};
}

BipolarPattern to_bipolar(const KeyedPattern& p) {
  Vector spins(p.size());
  Index at = 0;
  for (Index i = 0; i < p.key.size(); ++i) spins[at++] = p.key[i] ? 1.0 : -1.0;
  for (Index i = 0; i < p.value.size(); ++i) spins[at++] = p.value[i] ? 1.0 : -1.0;
  return BipolarPattern(std::move(spins));
}

const char* to_string(PatternKind k) {
  return k == PatternKind::Signal ? "signal" : "background";
}

PatternKind pattern_kind_from_string(const std::string& s) {
  if (s == "signal") return PatternKind::Signal;
  if (s == "background") return PatternKind::Background;
  throw std::invalid_argument("unknown pattern kind: " + s);
}

PatternLibrary::PatternLibrary(Index value_length, Index key_length)
    : value_length_(value_length), key_length_(key_length) {
  if (value_length < 1) throw std::invalid_argument("PatternLibrary: V must be >= 1");
  if (key_length < 0) throw std::invalid_argument("PatternLibrary: K must be >= 0");
}

void PatternLibrary::add(KeyedPattern pattern, PatternKind kind,
                         std::optional<ParticleState> source) {
  if (pattern.value.size() != value_length_ || pattern.key.size() != key_length_) {
    throw std::invalid_argument("PatternLibrary::add: pattern does not match (K, V)");
  }
  if (contains_value(pattern.value)) {
    throw std::invalid_argument("PatternLibrary::add: duplicate value pattern");
  }
  patterns_.push_back(std::move(pattern));
  kinds_.push_back(kind);
  sources_.push_back(std::move(source));
  if (kind == PatternKind::Signal) ++signal_count_;
}

double PatternLibrary::signal_density() const {
  return static_cast<double>(signal_count_) / static_cast<double>(value_length_);
}

double PatternLibrary::background_density() const {
  return static_cast<double>(background_count()) / static_cast<double>(value_length_);
}

const KeyedPattern& PatternLibrary::pattern(Index i) const {
  return patterns_.at(static_cast<std::size_t>(i));
}

PatternKind PatternLibrary::kind(Index i) const {
  return kinds_.at(static_cast<std::size_t>(i));
}

const std::optional<ParticleState>& PatternLibrary::source(Index i) const {
  return sources_.at(static_cast<std::size_t>(i));
}

std::vector<BipolarPattern> PatternLibrary::encoded_all() const {
  std::vector<BipolarPattern> out;
  out.reserve(patterns_.size());
  for (const auto& p : patterns_) out.push_back(to_bipolar(p));
  return out;
}

bool PatternLibrary::contains_value(const BitPattern& value) const {
  for (const auto& p : patterns_) {
    if (p.value == value) return true;
  }
  return false;
}

std::vector<Index> PatternLibrary::signal_indices() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i) {
    if (kinds_[static_cast<std::size_t>(i)] == PatternKind::Signal) out.push_back(i);
  }
  return out;
}

std::vector<Index> PatternLibrary::background_indices() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i) {
    if (kinds_[static_cast<std::size_t>(i)] == PatternKind::Background) out.push_back(i);
  }
  return out;
}

PatternLibrary with_keys(const PatternLibrary& lib) {
  PatternLibrary keyed(lib.value_length(), 1);
  for (Index i = 0; i < lib.size(); ++i) {
    const int key_bit = lib.kind(i) == PatternKind::Signal ? 1 : 0;
    KeyedPattern p{BitPattern(std::vector<std::uint8_t>{static_cast<std::uint8_t>(key_bit)}),
                   lib.pattern(i).value};
    keyed.add(std::move(p), lib.kind(i), lib.source(i));
  }
  return keyed;
}

}  // namespace qamtrack
