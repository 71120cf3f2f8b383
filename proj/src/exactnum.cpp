#include "sturm/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

#include "sturm/error.hpp"

namespace sturm {

namespace {

int sign_of(const BigInt& v) { return v.sign(); }

BigInt gcd_big(BigInt x, BigInt y) {
  if (x < 0) x = -x;
  if (y < 0) y = -y;
  return boost::multiprecision::gcd(x, y);
}

// Splits n >= 0 into k^2 * m with m squarefree.
std::pair<BigInt, BigInt> split_square(BigInt n) {
  BigInt k = 1;
  for (BigInt p = 2; p * p <= n; ++p) {
    const BigInt pp = p * p;
    while (n % pp == 0) {
      n /= pp;
      k *= p;
    }
  }
  return {k, n};
}

}  // namespace

BigInt floor_div(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("floor_div: zero denominator");
  BigInt q = num / den;
  const BigInt r = num - q * den;
  if (r != 0 && ((r < 0) != (den < 0))) --q;
  return q;
}

ExactReal::ExactReal(std::int64_t value) : a_(value) {}

ExactReal::ExactReal(const BigInt& value) : a_(value) {}

ExactReal::ExactReal(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  normalize();
}

ExactReal ExactReal::rational(const BigInt& p, const BigInt& q) {
  if (q == 0) throw InvalidArgument("rational with zero denominator");
  return ExactReal(p, 0, q, 0);
}

ExactReal ExactReal::quadratic(const BigInt& a, const BigInt& b, const BigInt& c,
                               const BigInt& d) {
  if (c == 0) throw InvalidArgument("quadratic with zero denominator");
  if (d < 0) throw InvalidArgument("negative radicand");
  if (b == 0 || d == 0) return ExactReal(a, 0, c, 0);
  auto [k, m] = split_square(d);
  if (m == 1) return ExactReal(a + b * k, 0, c, 0);
  return ExactReal(a, b * k, c, m);
}

ExactReal ExactReal::sqrt(const BigInt& n) { return quadratic(0, 1, 1, n); }

void ExactReal::normalize() {
  if (c_ == 0) throw InvalidArgument("zero denominator");
  if (b_ == 0) {
    d_ = 0;
    if (a_ == 0) {
      c_ = 1;
      return;
    }
    BigInt g = gcd_big(a_, c_);
    a_ /= g;
    c_ /= g;
  } else {
    BigInt g = gcd_big(gcd_big(a_, b_), c_);
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
}

int ExactReal::sign() const {
  if (b_ == 0) return sign_of(a_);
  const int sa = sign_of(a_);
  const int sb = sign_of(b_);
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger magnitude wins; equality is impossible
  // because sqrt(d) is irrational.
  return a_ * a_ > b_ * b_ * d_ ? sa : sb;
}

const BigInt& ExactReal::field_with(const ExactReal& other) const {
  if (b_ == 0) return other.d_;
  if (other.b_ == 0 || other.d_ == d_) return d_;
  throw MixedRadicalError("arithmetic mixes sqrt(" + d_.str() + ") and sqrt(" +
                          other.d_.str() + ")");
}

ExactReal ExactReal::operator-() const {
  ExactReal r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

ExactReal& ExactReal::operator+=(const ExactReal& rhs) {
  BigInt d = field_with(rhs);
  *this = ExactReal(a_ * rhs.c_ + rhs.a_ * c_, b_ * rhs.c_ + rhs.b_ * c_, c_ * rhs.c_,
                    std::move(d));
  return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& rhs) { return *this += -rhs; }

ExactReal& ExactReal::operator*=(const ExactReal& rhs) {
  BigInt d = field_with(rhs);
  *this = ExactReal(a_ * rhs.a_ + b_ * rhs.b_ * d, a_ * rhs.b_ + b_ * rhs.a_,
                    c_ * rhs.c_, std::move(d));
  return *this;
}

ExactReal& ExactReal::operator/=(const ExactReal& rhs) {
  if (rhs.is_zero()) throw InvalidArgument("division by zero");
  field_with(rhs);
  // c' / (a' + b' sqrt d) = c' (a' - b' sqrt d) / (a'^2 - b'^2 d)
  const BigInt norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * rhs.d_;
  ExactReal inverse(rhs.c_ * rhs.a_, -rhs.c_ * rhs.b_, norm, rhs.d_);
  return *this *= inverse;
}

std::strong_ordering compare(const ExactReal& x, const ExactReal& y) {
  int s = 0;
  if (x.is_rational() || y.is_rational() || x.radicand() == y.radicand()) {
    s = (x - y).sign();
  } else {
    // c1 c2 (x - y) = U + V sqrt(d2), U in Q(sqrt(d1)), V an integer.
    const ExactReal u = ExactReal::quadratic(x.a() * y.c() - y.a() * x.c(), x.b() * y.c(),
                                             1, x.radicand());
    const BigInt v = -y.b() * x.c();
    const int su = u.sign();
    const int sv = v.sign();
    if (su == 0 || su == sv) {
      s = su == 0 ? sv : su;
    } else {
      const int bigger = (u * u - ExactReal(v * v * y.radicand())).sign();
      s = bigger > 0 ? su : sv;
    }
  }
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const ExactReal& x, const ExactReal& y) {
  return compare(x, y);
}

BigInt floor(const ExactReal& x) {
  if (x.is_rational()) return floor_div(x.a(), x.c());
  // b sqrt(d) lies strictly between two consecutive integers.
  const BigInt s = boost::multiprecision::sqrt(BigInt(x.b() * x.b() * x.radicand()));
  const BigInt below = x.b() > 0 ? x.a() + s : x.a() - s - 1;
  return floor_div(below, x.c());
}

BigInt ceil(const ExactReal& x) { return -floor(-x); }

ExactReal frac(const ExactReal& x) { return x - ExactReal(floor(x)); }

BigInt floor_of_sum(const ExactReal& x, const ExactReal& y) {
  if (x.is_rational() || y.is_rational() || x.radicand() == y.radicand()) {
    return floor(x + y);
  }
  const BigInt m = floor(x) + floor(y);
  return compare(x, ExactReal(BigInt(m + 1)) - y) >= 0 ? BigInt(m + 1) : m;
}

ExactReal rational_between(const ExactReal& lo, const ExactReal& hi) {
  if (compare(lo, hi) >= 0) throw InvalidArgument("rational_between: empty interval");
  BigInt den = 1;
  for (;;) {
    const BigInt num = floor(lo * ExactReal(den)) + 1;
    ExactReal candidate = ExactReal::rational(num, den);
    if (compare(candidate, hi) < 0) return candidate;
    den *= 2;
  }
}

std::string ExactReal::to_string() const {
  if (b_ == 0) {
    if (c_ == 1) return a_.str();
    return a_.str() + "/" + c_.str();
  }
  std::string num;
  if (a_ != 0) num = a_.str();
  const BigInt mag = b_ < 0 ? BigInt(-b_) : b_;
  if (b_ < 0) {
    num += "-";
  } else if (a_ != 0) {
    num += "+";
  }
  if (mag != 1) num += mag.str() + "*";
  num += "sqrt(" + d_.str() + ")";
  if (c_ == 1) return num;
  return "(" + num + ")/" + c_.str();
}

double ExactReal::to_double() const {
  const double root = b_ == 0 ? 0.0 : std::sqrt(d_.convert_to<double>());
  return (a_.convert_to<double>() + b_.convert_to<double>() * root) / c_.convert_to<double>();
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ExactReal parse_all() {
    ExactReal v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidArgument("cannot parse exact real '" + std::string(text_) + "': " + why);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactReal expr() {
    ExactReal v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  ExactReal term() {
    ExactReal v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        ExactReal rhs = factor();
        if (rhs.is_zero()) fail("division by zero");
        v /= rhs;
      } else {
        return v;
      }
    }
  }

  ExactReal factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      ExactReal v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip();
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      ExactReal arg = expr();
      if (!eat(')')) fail("missing ')'");
      if (!arg.is_rational() || arg.sign() < 0) fail("sqrt needs a nonnegative rational");
      return ExactReal::quadratic(0, 1, arg.c(), arg.a() * arg.c());
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                : "unexpected end");
    return ExactReal(BigInt(std::string(text_.substr(start, pos_ - start))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactReal ExactReal::parse(std::string_view text) { return ExprParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Continued fractions

const BigInt& ContinuedFraction::quotient(std::size_t i) const {
  if (i < quotients.size()) return quotients[i];
  if (period.empty()) throw InvalidArgument("continued fraction has no quotient " + std::to_string(i));
  return period[(i - quotients.size()) % period.size()];
}

std::string ContinuedFraction::to_string() const {
  std::ostringstream out;
  out << '[' << whole;
  if (!quotients.empty() || !period.empty()) out << ';';
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    if (i) out << ',';
    out << quotients[i];
  }
  if (!period.empty()) {
    if (!quotients.empty()) out << ',';
    out << '(';
    for (std::size_t i = 0; i < period.size(); ++i) {
      if (i) out << ',';
      out << period[i];
    }
    out << ')';
  }
  out << ']';
  return out.str();
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto fail = [&](const std::string& why) -> void {
    throw InvalidArgument("cannot parse continued fraction '" + std::string(text) + "': " + why);
  };
  if (s.size() < 3 || s.front() != '[' || s.back() != ']') fail("expected [a0;a1,...]");
  s = s.substr(1, s.size() - 2);

  auto parse_int = [&](const std::string& tok) {
    if (tok.empty()) fail("empty quotient");
    std::size_t i = tok[0] == '-' ? 1 : 0;
    if (i == tok.size()) fail("bad quotient '" + tok + "'");
    for (; i < tok.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(tok[i]))) fail("bad quotient '" + tok + "'");
    }
    return BigInt(tok);
  };

  ContinuedFraction cf;
  const auto semi = s.find(';');
  cf.whole = parse_int(s.substr(0, semi));
  if (semi == std::string::npos) return cf;
  std::string rest = s.substr(semi + 1);
  const auto open = rest.find('(');
  std::string head = rest;
  if (open != std::string::npos) {
    if (rest.back() != ')') fail("periodic part must close the expansion");
    head = rest.substr(0, open);
    const std::string tail = rest.substr(open + 1, rest.size() - open - 2);
    std::stringstream ts(tail);
    for (std::string tok; std::getline(ts, tok, ',');) cf.period.push_back(parse_int(tok));
    if (cf.period.empty()) fail("empty period");
    if (!head.empty()) {
      if (head.back() != ',') fail("expected ',' before '('");
      head.pop_back();
    }
  }
  if (!head.empty()) {
    std::stringstream hs(head);
    for (std::string tok; std::getline(hs, tok, ',');) cf.quotients.push_back(parse_int(tok));
  }
  return cf;
}

ExactReal cf_value(const ContinuedFraction& cf) {
  if (cf.whole < 0) throw InvalidArgument("continued fraction with negative integer part");
  for (const auto& q : cf.quotients) {
    if (q <= 0) throw InvalidArgument("non-positive partial quotient " + q.str());
  }
  for (const auto& q : cf.period) {
    if (q <= 0) throw InvalidArgument("non-positive partial quotient " + q.str());
  }

  ExactReal tail;
  bool have_tail = false;
  if (!cf.period.empty()) {
    // y = [p1; p2, ..., pk, y] = (h y + h') / (k y + k'), so
    // k y^2 + (k' - h) y - h' = 0 and y > 1 is the positive root.
    BigInt h = 1, h_prev = 0, k = 0, k_prev = 1;
    for (const auto& p : cf.period) {
      BigInt nh = p * h + h_prev;
      BigInt nk = p * k + k_prev;
      h_prev = std::exchange(h, nh);
      k_prev = std::exchange(k, nk);
    }
    const BigInt lin = h - k_prev;
    const BigInt disc = lin * lin + 4 * k * h_prev;
    tail = ExactReal::quadratic(lin, 1, 2 * k, disc);
    have_tail = true;
  }
  for (auto it = cf.quotients.rbegin(); it != cf.quotients.rend(); ++it) {
    tail = have_tail ? ExactReal(*it) + ExactReal(1) / tail : ExactReal(*it);
    have_tail = true;
  }
  if (!have_tail) return ExactReal(cf.whole);
  return ExactReal(cf.whole) + ExactReal(1) / tail;
}

ContinuedFraction cf_expand(const ExactReal& x, std::size_t count) {
  if (x.sign() <= 0 || compare(x, ExactReal(1)) >= 0) {
    throw InvalidArgument("cf_expand needs 0 < x < 1, got " + x.to_string());
  }
  ContinuedFraction cf;
  ExactReal v = ExactReal(1) / x;
  for (std::size_t i = 0; i < count; ++i) {
    BigInt a = floor(v);
    ExactReal rest = v - ExactReal(a);
    cf.quotients.push_back(std::move(a));
    if (rest.is_zero()) break;
    v = ExactReal(1) / rest;
  }
  return cf;
}

}  // namespace sturm
