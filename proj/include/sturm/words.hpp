#pragma once

// Finite binary words and the generators for mechanical, rotation, standard
// and characteristic words.
//
// Mechanical and rotation words are indexed from 0. Characteristic words are
// stored 0-based as well; the interval APIs of ostrowski.hpp and
// palindromes.hpp view them 1-based, so that (p1..p2] names symbols
// p1+1, ..., p2.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sturm/exactnum.hpp"

namespace sturm {

/// Rendering alphabet. The coding t maps 0 -> a and 1 -> b.
enum class Alphabet { binary, letters };

/// A finite word over {0, 1}, packed one bit per symbol.
class BinaryWord {
 public:
  BinaryWord() = default;
  explicit BinaryWord(std::size_t length, int fill = 0);

  /// Accepts "0101..." or "abab..." (not mixed).
  static BinaryWord parse(std::string_view text);
  /// Symbol i is bit i of `bits`.
  static BinaryWord from_bits(std::uint64_t bits, std::size_t length);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  int operator[](std::size_t i) const {
    return static_cast<int>((blocks_[i >> 6] >> (i & 63)) & 1U);
  }
  void set(std::size_t i, int symbol);
  void push_back(int symbol);
  void append(const BinaryWord& other);
  void truncate(std::size_t length);

  BinaryWord slice(std::size_t pos, std::size_t length) const;
  BinaryWord prefix(std::size_t length) const { return slice(0, length); }
  BinaryWord reversed() const;
  BinaryWord power(std::size_t times) const;
  bool starts_with(const BinaryWord& other) const;
  /// True when `other` occurs in this word starting at `pos`.
  bool matches_at(std::size_t pos, const BinaryWord& other) const;
  std::size_t count_ones() const;

  /// Bit-packed value of a word with at most 64 symbols.
  std::uint64_t bits() const;

  std::string str(Alphabet alphabet = Alphabet::binary) const;

  friend bool operator==(const BinaryWord& x, const BinaryWord& y) {
    return x.size_ == y.size_ && x.blocks_ == y.blocks_;
  }
  /// Lexicographic by symbol, shorter prefix first.
  friend std::strong_ordering operator<=>(const BinaryWord& x, const BinaryWord& y);

  std::size_t hash() const;

 private:
  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
};

BinaryWord concat(const BinaryWord& x, const BinaryWord& y);

// ---------------------------------------------------------------------------
// Mechanical and rotation words

enum class Flavor { lower, upper };

struct MechanicalParams {
  ExactReal sigma;
  ExactReal rho;
  Flavor flavor = Flavor::lower;

  /// Throws InvalidArgument unless 0 < sigma < 1 and 0 <= rho < 1.
  void validate() const;
};

/// s[i] = floor((i+1) sigma + rho) - floor(i sigma + rho) (lower), or the same
/// with ceilings (upper), for i = 0 .. length-1.
BinaryWord mechanical_word(const MechanicalParams& params, std::size_t length);

/// r[q] = 0 iff {q alpha + rho} <= 1 - sigma, for q = 0 .. length-1.
/// alpha and rho may come from different quadratic fields as long as
/// sigma and rho share one.
BinaryWord rotation_word(const ExactReal& alpha, const ExactReal& rho, const ExactReal& sigma,
                         std::size_t length);

// ---------------------------------------------------------------------------
// Directive sequences, standard and characteristic words

class DirectiveSequence {
 public:
  using Digit = std::uint64_t;

  DirectiveSequence() = default;
  /// d_0 may be 0, every later digit (tail included) must be >= 1.
  DirectiveSequence(std::vector<Digit> digits, std::vector<Digit> tail = {});

  /// "1,1,(1)", "(2)", "1,1,1,1,8,(1)", "3,5" or the alias "fib".
  static DirectiveSequence parse(std::string_view text);
  static DirectiveSequence fibonacci() { return DirectiveSequence({}, {1}); }

  bool is_infinite() const { return !tail_.empty(); }
  bool has(std::size_t i) const { return is_infinite() || i < digits_.size(); }
  /// Number of digits available, or SIZE_MAX for an infinite sequence.
  std::size_t available() const;
  Digit operator[](std::size_t i) const;

  const std::vector<Digit>& explicit_digits() const { return digits_; }
  const std::vector<Digit>& tail() const { return tail_; }

  /// Canonical text: shortest period, preperiod absorbed into the period.
  std::string to_string() const;

  /// [0; 1 + d_0, d_1, d_2, ...].
  ContinuedFraction slope_cf() const;
  ExactReal slope() const;

  friend bool operator==(const DirectiveSequence&, const DirectiveSequence&) = default;

 private:
  void canonicalize();

  std::vector<Digit> digits_;
  std::vector<Digit> tail_;
};

/// s_{-1} = b, s_0 = a, s_{k+1} = s_k^{d_k} s_{k-1}. Element i of the result
/// is s_{i-1}, so the list runs s_{-1}, s_0, ..., s_n.
std::vector<BinaryWord> standard_words(const DirectiveSequence& d, std::size_t n);

/// Prefix of length `length` of the characteristic word lim s_n.
BinaryWord characteristic_prefix(const DirectiveSequence& d, std::size_t length);

// ---------------------------------------------------------------------------
// Factors and balance

std::set<BinaryWord> factor_set(const BinaryWord& w, std::size_t n);
std::size_t factor_count(const BinaryWord& w, std::size_t n);

/// Default symbol cap for prefix-doubling stabilization.
inline constexpr std::size_t kDefaultStabilizeCap = std::size_t{1} << 20;

/// Evaluates `measure` on prefixes L, 2L, 4L, ... of the characteristic word
/// and returns the first value that repeats under doubling. Throws
/// CapExceeded when 2L would pass `cap`.
std::size_t stabilized(const DirectiveSequence& d, std::size_t start,
                       const std::function<std::size_t(const BinaryWord&)>& measure,
                       std::size_t cap = kDefaultStabilizeCap);

/// Number of length-n factors of the characteristic word of d.
std::size_t characteristic_complexity(const DirectiveSequence& d, std::size_t n,
                                      std::size_t cap = kDefaultStabilizeCap);

struct BalanceWitness {
  int symbol = 1;      // the letter whose counts differ
  BinaryWord lighter;  // fewer occurrences of `symbol`
  BinaryWord heavier;
};

struct BalanceReport {
  bool balanced = true;
  std::optional<BalanceWitness> witness;
};

BalanceReport is_balanced(const BinaryWord& w);

// ---------------------------------------------------------------------------
// n-partitions

struct NPartition {
  std::size_t m = 0;
  /// Each entry is m (block s_m) or m - 1 (block s_{m-1}); stored as signed
  /// because s_{-1} is a valid block when m = 0.
  std::vector<long> blocks;
  /// 0-based start position of each block.
  std::vector<std::size_t> starts;
  /// Total length of the listed blocks, at most the requested length.
  std::size_t covered = 0;
};

/// Decomposition of the characteristic word into blocks s_m and s_{m-1},
/// truncated to the last complete block inside the first `length` symbols.
NPartition n_partition(const DirectiveSequence& d, std::size_t m, std::size_t length);

}  // namespace sturm

template <>
struct std::hash<sturm::BinaryWord> {
  std::size_t operator()(const sturm::BinaryWord& w) const noexcept { return w.hash(); }
};
