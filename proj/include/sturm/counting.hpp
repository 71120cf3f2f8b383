#pragma once

// Closed-form counts for Sturmian factors and rotation words, with the
// brute-force oracles that check them.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sturm/exactnum.hpp"
#include "sturm/words.hpp"

namespace sturm {

std::uint64_t euler_phi(std::uint64_t q);
/// phi(0..limit); entry 0 is 0.
std::vector<std::uint64_t> totient_sieve(std::size_t limit);

/// 1 + sum_{q=1}^{n} phi(q) (n + 1 - q): the number of factors of length n
/// over all Sturmian words.
BigInt sturmian_total(std::size_t n);

inline constexpr std::size_t kDefaultBalancedCap = 22;
inline constexpr std::size_t kDefaultRotationCap = 14;

/// Number of balanced binary words of length n by exhaustive enumeration.
/// `workers` = 0 picks the hardware concurrency.
std::uint64_t balanced_count(std::size_t n, std::size_t cap = kDefaultBalancedCap,
                             std::size_t workers = 1);

/// f(n) = 2 + n(n+1)(n+2)/3 + 2 sum_{q=1}^{n} (n - q + 1) phi(q).
BigInt rotation_face_count(std::size_t order);

/// f(n)/2 - 7 for even n, f(n)/2 - 8 for odd n: the predicted number of
/// rotation words of length n + 1 when 3/8 < sigma < 2/5 and n >= 8.
BigInt rotation_formula(std::size_t order);
bool in_rotation_formula_range(const ExactReal& sigma);

enum class LineKind { boundary, integer, shifted };

/// k * alpha + rho = level in the (alpha, rho) parameter square.
struct ArrangementLine {
  std::uint64_t k = 0;
  ExactReal level;
  LineKind kind = LineKind::integer;

  /// level - k * alpha
  ExactReal height(const ExactReal& alpha) const;
};

/// Boundaries rho = 0 and rho = 1, then every line k alpha + rho = l and
/// k alpha + rho = l - sigma with 0 <= k <= order that crosses the open
/// square.
std::vector<ArrangementLine> arrangement_lines(const ExactReal& sigma, std::size_t order);

/// Faces of the order-n arrangement inside the open unit square, counted
/// directly from the geometry as 1 + (#chords) + sum over interior crossing
/// points of (multiplicity - 1).
std::uint64_t arrangement_face_count(const ExactReal& sigma, std::size_t order);

struct FaceSample {
  ExactReal alpha;
  ExactReal rho;
  BinaryWord word;
  // The strip alpha_lo < alpha < alpha_hi holds no crossing; the sample sits
  // strictly between lines `below` and `above` (indices into the line list).
  ExactReal alpha_lo;
  ExactReal alpha_hi;
  std::size_t below = 0;
  std::size_t above = 0;
};

/// One sample point per (strip, cell) of the arrangement of order length-1,
/// together with the rotation word of the given length at that point.
std::vector<FaceSample> face_samples(const ExactReal& sigma, std::size_t length,
                                     std::size_t workers = 1);

/// Number of distinct rotation words of the given length over all
/// (alpha, rho) in [0,1)^2 for fixed irrational sigma.
std::uint64_t rotation_word_count(const ExactReal& sigma, std::size_t length,
                                  std::size_t cap = kDefaultRotationCap, std::size_t workers = 1);

}  // namespace sturm
