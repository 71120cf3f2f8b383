#pragma once

// Exact arithmetic over the rationals and real quadratic fields Q(sqrt(d)).
//
// An ExactReal is either a rational p/q or a quadratic irrational
// (a + b*sqrt(d))/c. Arithmetic is closed inside a single field; mixing two
// different radicands in one sum or product raises MixedRadicalError.
// Comparison is exact between any two values, including values from two
// different fields.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sturm {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                            boost::multiprecision::et_off>;

class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(std::int64_t value);  // NOLINT(google-explicit-constructor)
  explicit ExactReal(const BigInt& value);

  /// p/q, reduced. Throws InvalidArgument when q == 0.
  static ExactReal rational(const BigInt& p, const BigInt& q);
  /// (a + b*sqrt(d))/c. Square factors are pulled out of d; perfect squares
  /// collapse to a rational.
  static ExactReal quadratic(const BigInt& a, const BigInt& b, const BigInt& c,
                             const BigInt& d);
  static ExactReal sqrt(const BigInt& n);

  /// Accepts integers, `p/q`, `(a+b*sqrt(d))/c` and any expression built from
  /// + - * / parentheses and sqrt(...) of a nonnegative rational.
  static ExactReal parse(std::string_view text);

  bool is_rational() const { return b_ == 0; }
  bool is_integer() const { return b_ == 0 && c_ == 1; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  int sign() const;

  // Normalized encoding. For rationals b() == 0 and radicand() == 0.
  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& radicand() const { return d_; }

  std::string to_string() const;
  double to_double() const;

  ExactReal operator-() const;
  ExactReal& operator+=(const ExactReal& rhs);
  ExactReal& operator-=(const ExactReal& rhs);
  ExactReal& operator*=(const ExactReal& rhs);
  ExactReal& operator/=(const ExactReal& rhs);

  friend ExactReal operator+(ExactReal lhs, const ExactReal& rhs) { return lhs += rhs; }
  friend ExactReal operator-(ExactReal lhs, const ExactReal& rhs) { return lhs -= rhs; }
  friend ExactReal operator*(ExactReal lhs, const ExactReal& rhs) { return lhs *= rhs; }
  friend ExactReal operator/(ExactReal lhs, const ExactReal& rhs) { return lhs /= rhs; }

  friend bool operator==(const ExactReal& x, const ExactReal& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const ExactReal& x, const ExactReal& y);

 private:
  ExactReal(BigInt a, BigInt b, BigInt c, BigInt d);
  void normalize();
  const BigInt& field_with(const ExactReal& other) const;

  BigInt a_{0};
  BigInt b_{0};
  BigInt c_{1};
  BigInt d_{0};
};

/// Exact total order, valid across fields.
std::strong_ordering compare(const ExactReal& x, const ExactReal& y);

BigInt floor(const ExactReal& x);
BigInt ceil(const ExactReal& x);
/// x - floor(x), always in [0, 1).
ExactReal frac(const ExactReal& x);

/// floor(x + y) where x and y may live in different quadratic fields.
BigInt floor_of_sum(const ExactReal& x, const ExactReal& y);

/// Some rational strictly between lo and hi (lo < hi), with a power-of-two
/// denominator.
ExactReal rational_between(const ExactReal& lo, const ExactReal& hi);

BigInt floor_div(const BigInt& num, const BigInt& den);

/// [whole; quotients..., (period...)]. An empty period means the expansion
/// is finite.
struct ContinuedFraction {
  BigInt whole = 0;
  std::vector<BigInt> quotients;
  std::vector<BigInt> period;

  bool is_periodic() const { return !period.empty(); }
  /// i-th partial quotient after `whole` (0-based), unrolling the period.
  /// Throws InvalidArgument when a finite expansion is too short.
  const BigInt& quotient(std::size_t i) const;

  std::string to_string() const;
  static ContinuedFraction parse(std::string_view text);

  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

ExactReal cf_value(const ContinuedFraction& cf);
/// First `count` partial quotients of x in (0, 1); stops early when a
/// rational expansion terminates.
ContinuedFraction cf_expand(const ExactReal& x, std::size_t count);

}  // namespace sturm
