#pragma once

// Ostrowski numeration attached to a directive sequence: N = sum k_i q_i
// where q_i = |s_i|.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sturm/exactnum.hpp"
#include "sturm/words.hpp"

namespace sturm {

/// q_{-1} = q_0 = 1, q_{i+1} = d_i q_i + q_{i-1}.
class StandardLengths {
 public:
  StandardLengths(const DirectiveSequence& d, std::size_t n);

  /// q_i for -1 <= i <= n.
  const BigInt& operator[](long i) const;
  std::size_t top() const { return q_.size() - 2; }

 private:
  std::vector<BigInt> q_;  // q_[i + 1] = q_i
};

class OstrowskiRep {
 public:
  using Digit = DirectiveSequence::Digit;

  OstrowskiRep() = default;
  /// Digits least significant first; high zeros are dropped.
  OstrowskiRep(DirectiveSequence d, std::vector<Digit> digits);

  /// Most significant digit first: "100001", or "1.12.0" when some digit
  /// needs more than one decimal place. "0" and "" are the empty rep.
  static OstrowskiRep parse(std::string_view text, const DirectiveSequence& d);

  const DirectiveSequence& directive() const { return d_; }
  const std::vector<Digit>& digits() const { return digits_; }
  /// k_i, zero past the top digit.
  Digit digit(std::size_t i) const { return i < digits_.size() ? digits_[i] : 0; }
  std::size_t size() const { return digits_.size(); }

  std::string to_string() const;

  friend bool operator==(const OstrowskiRep&, const OstrowskiRep&) = default;
  /// Numeric order of the digit strings.
  friend bool operator<(const OstrowskiRep& x, const OstrowskiRep& y) {
    if (x.digits_.size() != y.digits_.size()) return x.digits_.size() < y.digits_.size();
    return std::lexicographical_compare(x.digits_.rbegin(), x.digits_.rend(), y.digits_.rbegin(),
                                        y.digits_.rend());
  }

 private:
  DirectiveSequence d_;
  std::vector<Digit> digits_;
};

/// Greedy canonical representation. Throws InvalidArgument when a finite
/// directive sequence runs out of digits.
OstrowskiRep encode(const BigInt& n, const DirectiveSequence& d);
BigInt decode(const OstrowskiRep& rep);

/// k_i <= d_i for all i, and k_i = d_i forces k_{i-1} = 0.
bool is_canonical(const OstrowskiRep& rep);
/// k_i <= d_i for all i.
bool is_legal(const OstrowskiRep& rep);
/// s_n^{k_n} ... s_0^{k_0} equals the characteristic prefix of length N.
bool is_valid(const OstrowskiRep& rep);

/// s_n^{k_n} ... s_0^{k_0}, valid or not.
BinaryWord digits_to_word(const OstrowskiRep& rep);

inline constexpr std::uint64_t kDefaultOstrowskiCap = 100000;

/// Every digit string (up to high zeros) with sum k_i q_i = n that is valid.
std::set<OstrowskiRep> enumerate_valid_reps(std::uint64_t n, const DirectiveSequence& d,
                                            std::uint64_t cap = kDefaultOstrowskiCap);

}  // namespace sturm
