#pragma once

// Palindromic factors, central words, palindrome occurrences in
// characteristic words and palindromic length.
//
// Occurrences are half-open intervals (p1..p2] over the 1-based
// characteristic word: (p1..p2] names symbols p1+1, ..., p2, which are
// 0-based indices p1 .. p2-1 of characteristic_prefix().

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sturm/ostrowski.hpp"
#include "sturm/words.hpp"

namespace sturm {

bool is_palindrome(const BinaryWord& w);

/// Palindrome queries on a fixed word in O(1) after a linear Manacher pass.
class PalindromeIndex {
 public:
  explicit PalindromeIndex(const BinaryWord& w);

  std::size_t size() const { return size_; }
  /// True when w[pos .. pos+length) is a palindrome (the empty word is).
  bool is_palindrome(std::size_t pos, std::size_t length) const;
  /// Lengths of the nonempty palindromes w[pos .. pos+len) with len <= max_length,
  /// in increasing order.
  std::vector<std::size_t> starting_at(std::size_t pos, std::size_t max_length) const;

 private:
  std::size_t size_;
  std::vector<std::size_t> odd_;   // odd_[i]: longest odd palindrome centred at i is 2*odd_[i]-1
  std::vector<std::size_t> even_;  // even_[i]: longest even palindrome centred before i is 2*even_[i]
};

std::vector<std::size_t> palindromes_starting_at(const BinaryWord& w, std::size_t pos,
                                                 std::size_t max_length);

/// True when w contains u^k for some nonempty u.
bool has_power(const BinaryWord& w, std::size_t k);

struct PalindromeCensus {
  std::size_t count = 0;  // distinct palindromic factors, the empty word included
  bool rich = false;      // count == |u| + 1
};

PalindromeCensus distinct_palindromic_factors(const BinaryWord& u);

/// h(n): palindromic factors of length n of the characteristic word.
std::size_t palindrome_factor_count(const DirectiveSequence& d, std::size_t n,
                                    std::size_t cap = kDefaultStabilizeCap);

/// c_{n,j} = s_n^j c_n, where c_n is s_n s_{n-1} without its last two letters.
BinaryWord central_word(const DirectiveSequence& d, std::size_t n, DirectiveSequence::Digit j);

struct PalindromeOccurrence {
  std::uint64_t p1 = 0;
  std::uint64_t p2 = 0;
  std::uint64_t length() const { return p2 - p1; }
  friend bool operator==(const PalindromeOccurrence&, const PalindromeOccurrence&) = default;
};

/// Characteristic word with 1-based access, grown on demand.
class CharacteristicWord {
 public:
  explicit CharacteristicWord(DirectiveSequence d) : d_(std::move(d)) {}

  const DirectiveSequence& directive() const { return d_; }
  /// Symbol s[i], i >= 1.
  int at(std::uint64_t i);
  /// s(p1..p2]
  BinaryWord factor(const PalindromeOccurrence& occ);
  /// Makes s[1..length] available.
  const BinaryWord& prefix(std::uint64_t length);

 private:
  DirectiveSequence d_;
  BinaryWord prefix_;
};

struct MaximalExtension {
  PalindromeOccurrence occurrence;
  /// The extension equals c_{m,j}; j > 0 whenever such a pair exists.
  std::size_t m = 0;
  DirectiveSequence::Digit j = 0;
};

/// Widens (p1..p2] symmetrically until it becomes a prefix or the next two
/// letters differ, then identifies the result among the central words.
/// Throws InvalidArgument when (p1..p2] is not a palindrome and
/// TheoremViolation when the result is not a central word.
MaximalExtension maximal_palindromic_extension(CharacteristicWord& w,
                                               const PalindromeOccurrence& occ);

/// Legal rep x of p1, pivot m and digit y_m such that
/// x_n ... x_{m+1} y_m (d_{m-1} - x_{m-1}) ... (d_0 - x_0) is a valid rep of p2.
struct TprWitness {
  OstrowskiRep p1_rep;
  std::size_t m = 0;
  std::uint64_t y_m = 0;
  OstrowskiRep p2_rep;
  bool fallback_used = false;
};

/// Follows the split of p1 at the last complete s_m block of the maximal
/// extension; falls back to a search over all legal reps of p1 and all
/// pivots (logged on std::clog). Throws TheoremViolation when both fail.
TprWitness tpr_find_witness(CharacteristicWord& w, const PalindromeOccurrence& occ,
                            bool allow_fallback = true);

/// True when the witness satisfies its defining conditions.
bool tpr_check_witness(const DirectiveSequence& d, const PalindromeOccurrence& occ,
                       const TprWitness& witness);

/// Every occurrence (p1..p2] of a nonempty palindrome with p2 <= max_p2.
std::vector<PalindromeOccurrence> palindromic_occurrences(const DirectiveSequence& d,
                                                          std::uint64_t max_p2);

/// z_m = min(x_m, |d_m - x_m|).
std::vector<std::uint64_t> z_vector(const OstrowskiRep& rep);

struct ZdWitness {
  std::uint64_t n = 0;
  std::size_t digit = 0;
  OstrowskiRep r1;
  OstrowskiRep r2;
};

struct ZdReport {
  std::uint64_t max_gap = 0;
  std::optional<ZdWitness> witness;  // first N attaining max_gap
  std::vector<std::uint64_t> gap_by_n;
};

/// Largest |z_m(r1) - z_m(r2)| over valid reps r1, r2 of the same N <= n_max.
ZdReport zd_max_gap(const DirectiveSequence& d, std::uint64_t n_max,
                    std::uint64_t cap = kDefaultOstrowskiCap);

/// Minimal number of palindromes whose concatenation is u; 0 for the empty word.
std::size_t pal_length(const BinaryWord& u);
/// pal_length of every prefix: entry i is |u[0..i)|_pal.
std::vector<std::size_t> prefix_pal_lengths(const BinaryWord& u);

inline constexpr std::size_t kDefaultProfileCap = 200000;

/// (prefix length, pal_length) at each prefix where a new maximum appears.
std::vector<std::pair<std::size_t, std::size_t>> pal_length_profile(
    const DirectiveSequence& d, std::size_t length, std::size_t cap = kDefaultProfileCap);

struct HardPrefix {
  BigInt n;
  std::vector<std::size_t> positions;  // the Q + 1 digit positions used
  OstrowskiRep rep;
};

/// N whose legal rep has digit 3Q+1 at Q+1 positions m with d_m >= 6Q+2 and
/// zeros elsewhere; the prefix of length N cannot be split into Q
/// palindromes. Only the first `search_limit` digits are scanned. Q = 0
/// returns N = 1.
HardPrefix construct_hard_prefix(const DirectiveSequence& d, std::size_t q,
                                 std::size_t search_limit = 256);

}  // namespace sturm
