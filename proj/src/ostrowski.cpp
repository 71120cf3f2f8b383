#include "sturm/ostrowski.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "sturm/error.hpp"

namespace sturm {

StandardLengths::StandardLengths(const DirectiveSequence& d, std::size_t n) {
  if (n > 0 && !d.has(n - 1)) {
    throw InvalidArgument("standard_lengths: directive sequence " + d.to_string() +
                          " has no digit " + std::to_string(n - 1));
  }
  q_ = {1, 1};
  for (std::size_t i = 0; i < n; ++i) {
    q_.push_back(BigInt(d[i]) * q_[i + 1] + q_[i]);
  }
}

const BigInt& StandardLengths::operator[](long i) const {
  if (i < -1 || i > static_cast<long>(top())) {
    throw InvalidArgument("standard_lengths: index " + std::to_string(i) + " out of range");
  }
  return q_[static_cast<std::size_t>(i + 1)];
}

OstrowskiRep::OstrowskiRep(DirectiveSequence d, std::vector<Digit> digits)
    : d_(std::move(d)), digits_(std::move(digits)) {
  while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
}

OstrowskiRep OstrowskiRep::parse(std::string_view text, const DirectiveSequence& d) {
  std::vector<Digit> msb_first;
  auto bad = [&] { return InvalidArgument("invalid digit string '" + std::string(text) + "'"); };
  if (text.find('.') != std::string_view::npos) {
    std::size_t start = 0;
    for (;;) {
      const std::size_t dot = text.find('.', start);
      const std::string_view part = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
      if (part.empty() || part.size() > 18) throw bad();
      Digit value = 0;
      for (char ch : part) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw bad();
        value = value * 10 + static_cast<Digit>(ch - '0');
      }
      msb_first.push_back(value);
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  } else {
    for (char ch : text) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw bad();
      msb_first.push_back(static_cast<Digit>(ch - '0'));
    }
  }
  std::reverse(msb_first.begin(), msb_first.end());
  return OstrowskiRep(d, std::move(msb_first));
}

std::string OstrowskiRep::to_string() const {
  if (digits_.empty()) return "0";
  const bool wide = std::any_of(digits_.begin(), digits_.end(), [](Digit k) { return k >= 10; });
  std::string out;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
    if (wide && !out.empty()) out += '.';
    out += std::to_string(*it);
  }
  return out;
}

OstrowskiRep encode(const BigInt& n, const DirectiveSequence& d) {
  if (n < 0) throw InvalidArgument("encode: negative input");
  if (n == 0) return OstrowskiRep(d, {});
  // Grow the lengths until q_{top+1} > n.
  std::vector<BigInt> q{1};  // q_0, q_1, ...
  BigInt previous = 1;       // q_{i-1}
  for (;;) {
    const std::size_t i = q.size() - 1;
    if (!d.has(i)) {
      throw InvalidArgument("encode: directive sequence " + d.to_string() + " is too short for " +
                            n.str());
    }
    const BigInt next = BigInt(d[i]) * q[i] + previous;
    if (next > n) break;
    previous = q[i];
    q.push_back(next);
  }
  std::vector<OstrowskiRep::Digit> digits(q.size(), 0);
  BigInt rest = n;
  for (std::size_t i = q.size(); i-- > 0;) {
    const BigInt k = rest / q[i];
    digits[i] = k.convert_to<OstrowskiRep::Digit>();
    rest -= k * q[i];
  }
  return OstrowskiRep(d, std::move(digits));
}

BigInt decode(const OstrowskiRep& rep) {
  if (rep.size() == 0) return 0;
  const StandardLengths q(rep.directive(), rep.size() - 1);
  BigInt n = 0;
  for (std::size_t i = 0; i < rep.size(); ++i) n += BigInt(rep.digit(i)) * q[static_cast<long>(i)];
  return n;
}

bool is_legal(const OstrowskiRep& rep) {
  const auto& d = rep.directive();
  for (std::size_t i = 0; i < rep.size(); ++i) {
    if (!d.has(i) || rep.digit(i) > d[i]) return false;
  }
  return true;
}

bool is_canonical(const OstrowskiRep& rep) {
  if (!is_legal(rep)) return false;
  const auto& d = rep.directive();
  for (std::size_t i = 1; i < rep.size(); ++i) {
    if (rep.digit(i) == d[i] && rep.digit(i - 1) != 0) return false;
  }
  return true;
}

BinaryWord digits_to_word(const OstrowskiRep& rep) {
  if (rep.size() == 0) return BinaryWord();
  const auto s = standard_words(rep.directive(), rep.size() - 1);
  BinaryWord out;
  for (std::size_t i = rep.size(); i-- > 0;) {
    for (OstrowskiRep::Digit k = 0; k < rep.digit(i); ++k) out.append(s[i + 1]);
  }
  return out;
}

bool is_valid(const OstrowskiRep& rep) {
  const BinaryWord w = digits_to_word(rep);
  return w == characteristic_prefix(rep.directive(), w.size());
}

std::set<OstrowskiRep> enumerate_valid_reps(std::uint64_t n, const DirectiveSequence& d,
                                            std::uint64_t cap) {
  if (n > cap) {
    throw CapExceeded("enumerate_valid_reps: N = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
  }
  std::set<OstrowskiRep> found;
  if (n == 0) {
    found.insert(OstrowskiRep(d, {}));
    return found;
  }
  // Top index: largest t with q_t <= n.
  std::size_t top = 0;
  while (d.has(top)) {
    const StandardLengths q(d, top + 1);
    if (q[static_cast<long>(top + 1)] > n) break;
    ++top;
  }
  const auto s = standard_words(d, top);
  const BinaryWord prefix = characteristic_prefix(d, n);

  std::vector<OstrowskiRep::Digit> digits(top + 1, 0);
  std::function<void(long, std::uint64_t)> dfs = [&](long i, std::uint64_t pos) {
    if (i < 0) {
      if (pos == n) found.insert(OstrowskiRep(d, digits));
      return;
    }
    const BinaryWord& block = s[static_cast<std::size_t>(i + 1)];
    const std::uint64_t len = block.size();
    std::uint64_t k = 0;
    for (;;) {
      digits[static_cast<std::size_t>(i)] = k;
      if (i > 0 || pos == n) dfs(i - 1, pos);
      if (pos + len > n || !prefix.matches_at(pos, block)) break;
      pos += len;
      ++k;
    }
    digits[static_cast<std::size_t>(i)] = 0;
  };
  dfs(static_cast<long>(top), 0);
  return found;
}

}  // namespace sturm
