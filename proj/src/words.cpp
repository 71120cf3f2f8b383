#include "sturm/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "sturm/error.hpp"

namespace sturm {

// ---------------------------------------------------------------------------
// BinaryWord

BinaryWord::BinaryWord(std::size_t length, int fill)
    : blocks_((length + 63) / 64, fill ? ~std::uint64_t{0} : 0), size_(length) {
  if (fill && (length & 63)) blocks_.back() &= (std::uint64_t{1} << (length & 63)) - 1;
}

BinaryWord BinaryWord::parse(std::string_view text) {
  BinaryWord w;
  bool letters = false;
  bool digits = false;
  for (char ch : text) {
    switch (ch) {
      case '0': digits = true; w.push_back(0); break;
      case '1': digits = true; w.push_back(1); break;
      case 'a': letters = true; w.push_back(0); break;
      case 'b': letters = true; w.push_back(1); break;
      default:
        throw InvalidArgument("word '" + std::string(text) + "' has a symbol outside {0,1} and {a,b}");
    }
  }
  if (letters && digits) throw InvalidArgument("word '" + std::string(text) + "' mixes 0/1 with a/b");
  return w;
}

BinaryWord BinaryWord::from_bits(std::uint64_t bits, std::size_t length) {
  if (length > 64) throw InvalidArgument("from_bits supports at most 64 symbols");
  BinaryWord w;
  w.size_ = length;
  if (length) {
    if (length < 64) bits &= (std::uint64_t{1} << length) - 1;
    w.blocks_.push_back(bits);
  }
  return w;
}

void BinaryWord::set(std::size_t i, int symbol) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (symbol) {
    blocks_[i >> 6] |= mask;
  } else {
    blocks_[i >> 6] &= ~mask;
  }
}

void BinaryWord::push_back(int symbol) {
  if ((size_ & 63) == 0) blocks_.push_back(0);
  ++size_;
  set(size_ - 1, symbol);
}

void BinaryWord::append(const BinaryWord& other) {
  if ((size_ & 63) == 0) {
    blocks_.insert(blocks_.end(), other.blocks_.begin(), other.blocks_.end());
    size_ += other.size_;
    return;
  }
  blocks_.reserve((size_ + other.size_ + 63) / 64);
  for (std::size_t i = 0; i < other.size_; ++i) push_back(other[i]);
}

void BinaryWord::truncate(std::size_t length) {
  if (length >= size_) return;
  size_ = length;
  blocks_.resize((length + 63) / 64);
  if (length & 63) blocks_.back() &= (std::uint64_t{1} << (length & 63)) - 1;
}

BinaryWord BinaryWord::slice(std::size_t pos, std::size_t length) const {
  if (pos > size_ || length > size_ - pos) throw InvalidArgument("slice out of range");
  BinaryWord out;
  out.size_ = length;
  out.blocks_.assign((length + 63) / 64, 0);
  const std::size_t shift = pos & 63;
  const std::size_t first = pos >> 6;
  for (std::size_t k = 0; k < out.blocks_.size(); ++k) {
    std::uint64_t v = blocks_[first + k] >> shift;
    if (shift && first + k + 1 < blocks_.size()) v |= blocks_[first + k + 1] << (64 - shift);
    out.blocks_[k] = v;
  }
  if (length & 63) out.blocks_.back() &= (std::uint64_t{1} << (length & 63)) - 1;
  return out;
}

BinaryWord BinaryWord::reversed() const {
  BinaryWord out(size_);
  for (std::size_t i = 0; i < size_; ++i) out.set(size_ - 1 - i, (*this)[i]);
  return out;
}

BinaryWord BinaryWord::power(std::size_t times) const {
  BinaryWord out;
  for (std::size_t k = 0; k < times; ++k) out.append(*this);
  return out;
}

bool BinaryWord::starts_with(const BinaryWord& other) const { return matches_at(0, other); }

bool BinaryWord::matches_at(std::size_t pos, const BinaryWord& other) const {
  if (pos > size_ || other.size_ > size_ - pos) return false;
  return slice(pos, other.size_) == other;
}

std::size_t BinaryWord::count_ones() const {
  std::size_t n = 0;
  for (auto b : blocks_) n += static_cast<std::size_t>(__builtin_popcountll(b));
  return n;
}

std::uint64_t BinaryWord::bits() const {
  if (size_ > 64) throw InvalidArgument("bits() needs a word of at most 64 symbols");
  return blocks_.empty() ? 0 : blocks_[0];
}

std::string BinaryWord::str(Alphabet alphabet) const {
  const char zero = alphabet == Alphabet::letters ? 'a' : '0';
  const char one = alphabet == Alphabet::letters ? 'b' : '1';
  std::string s(size_, zero);
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) s[i] = one;
  }
  return s;
}

std::strong_ordering operator<=>(const BinaryWord& x, const BinaryWord& y) {
  const std::size_t n = std::min(x.size_, y.size_);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] != y[i]) return x[i] <=> y[i];
  }
  return x.size_ <=> y.size_;
}

std::size_t BinaryWord::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
  for (auto b : blocks_) {
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

BinaryWord concat(const BinaryWord& x, const BinaryWord& y) {
  BinaryWord out = x;
  out.append(y);
  return out;
}

// ---------------------------------------------------------------------------
// Mechanical and rotation words

void MechanicalParams::validate() const {
  if (sigma.sign() <= 0 || compare(sigma, ExactReal(1)) >= 0) {
    throw InvalidArgument("slope must lie in (0,1), got " + sigma.to_string());
  }
  if (rho.sign() < 0 || compare(rho, ExactReal(1)) >= 0) {
    throw InvalidArgument("intercept must lie in [0,1), got " + rho.to_string());
  }
}

BinaryWord mechanical_word(const MechanicalParams& params, std::size_t length) {
  params.validate();
  const bool lower = params.flavor == Flavor::lower;
  auto round = [lower](const ExactReal& v) { return lower ? floor(v) : ceil(v); };
  BinaryWord w;
  ExactReal v = params.rho;
  BigInt prev = round(v);
  for (std::size_t i = 0; i < length; ++i) {
    v += params.sigma;
    BigInt cur = round(v);
    w.push_back(cur != prev ? 1 : 0);
    prev = std::move(cur);
  }
  return w;
}

namespace {

bool same_field(const ExactReal& x, const ExactReal& y) {
  return x.is_rational() || y.is_rational() || x.radicand() == y.radicand();
}

}  // namespace

BinaryWord rotation_word(const ExactReal& alpha, const ExactReal& rho, const ExactReal& sigma,
                         std::size_t length) {
  const ExactReal one(1);
  if (alpha.sign() < 0 || compare(alpha, one) >= 0) {
    throw InvalidArgument("rotation angle must lie in [0,1), got " + alpha.to_string());
  }
  if (rho.sign() < 0 || compare(rho, one) >= 0) {
    throw InvalidArgument("intercept must lie in [0,1), got " + rho.to_string());
  }
  if (sigma.sign() <= 0 || compare(sigma, one) >= 0) {
    throw InvalidArgument("window width must lie in (0,1), got " + sigma.to_string());
  }
  // {q alpha + rho} <= 1 - sigma  <=>  q alpha - m <= (1 - sigma) - rho, with
  // m = floor(q alpha + rho). Only the final comparison crosses fields.
  const bool split = same_field(rho, sigma);
  const ExactReal threshold = split ? one - sigma - rho : one - sigma;
  BinaryWord w;
  ExactReal x;
  for (std::size_t q = 0; q < length; ++q) {
    const BigInt m = floor_of_sum(x, rho);
    const ExactReal lhs = split ? x - ExactReal(m) : x + rho - ExactReal(m);
    w.push_back(compare(lhs, threshold) <= 0 ? 0 : 1);
    x += alpha;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Directive sequences

DirectiveSequence::DirectiveSequence(std::vector<Digit> digits, std::vector<Digit> tail)
    : digits_(std::move(digits)), tail_(std::move(tail)) {
  for (std::size_t i = 1; i < digits_.size(); ++i) {
    if (digits_[i] == 0) throw InvalidArgument("directive digit d_" + std::to_string(i) + " must be >= 1");
  }
  for (auto t : tail_) {
    if (t == 0) throw InvalidArgument("periodic directive digits must be >= 1");
  }
  canonicalize();
}

void DirectiveSequence::canonicalize() {
  if (tail_.empty()) return;
  const std::size_t n = tail_.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = tail_[i] == tail_[i - p];
    if (periodic) {
      tail_.resize(p);
      break;
    }
  }
  while (!digits_.empty() && digits_.back() == tail_.back()) {
    std::rotate(tail_.rbegin(), tail_.rbegin() + 1, tail_.rend());
    digits_.pop_back();
  }
}

DirectiveSequence DirectiveSequence::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s == "fib") return fibonacci();
  auto fail = [&](const std::string& why) {
    throw InvalidArgument("cannot parse directive sequence '" + std::string(text) + "': " + why);
  };
  auto split = [&](const std::string& part) {
    std::vector<Digit> out;
    if (part.empty()) return out;
    std::stringstream ss(part);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        fail("bad digit '" + tok + "'");
      }
      out.push_back(std::stoull(tok));
    }
    if (part.back() == ',') fail("trailing ','");
    return out;
  };
  if (s.empty()) fail("empty");
  std::string head = s;
  std::vector<Digit> tail;
  const auto open = s.find('(');
  if (open != std::string::npos) {
    if (s.back() != ')' || s.find('(', open + 1) != std::string::npos) fail("period must be the last item");
    tail = split(s.substr(open + 1, s.size() - open - 2));
    if (tail.empty()) fail("empty period");
    head = s.substr(0, open);
    if (!head.empty()) {
      if (head.back() != ',') fail("expected ',' before '('");
      head.pop_back();
    }
  }
  return DirectiveSequence(split(head), std::move(tail));
}

std::size_t DirectiveSequence::available() const {
  return is_infinite() ? std::numeric_limits<std::size_t>::max() : digits_.size();
}

DirectiveSequence::Digit DirectiveSequence::operator[](std::size_t i) const {
  if (i < digits_.size()) return digits_[i];
  if (tail_.empty()) {
    throw InvalidArgument("directive sequence " + to_string() + " has no digit d_" + std::to_string(i));
  }
  return tail_[(i - digits_.size()) % tail_.size()];
}

std::string DirectiveSequence::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out << ',';
    out << digits_[i];
  }
  if (!tail_.empty()) {
    if (!digits_.empty()) out << ',';
    out << '(';
    for (std::size_t i = 0; i < tail_.size(); ++i) {
      if (i) out << ',';
      out << tail_[i];
    }
    out << ')';
  }
  return out.str();
}

ContinuedFraction DirectiveSequence::slope_cf() const {
  ContinuedFraction cf;
  if (digits_.empty() && tail_.empty()) throw InvalidArgument("empty directive sequence has no slope");
  if (!digits_.empty()) {
    for (auto digit : digits_) cf.quotients.emplace_back(digit);
    for (auto digit : tail_) cf.period.emplace_back(digit);
  } else {
    cf.quotients.emplace_back(tail_[0]);
    for (std::size_t i = 1; i <= tail_.size(); ++i) cf.period.emplace_back(tail_[i % tail_.size()]);
  }
  cf.quotients[0] += 1;
  return cf;
}

ExactReal DirectiveSequence::slope() const { return cf_value(slope_cf()); }

// ---------------------------------------------------------------------------
// Standard and characteristic words

std::vector<BinaryWord> standard_words(const DirectiveSequence& d, std::size_t n) {
  if (n > 0 && !d.has(n - 1)) {
    throw InvalidArgument("s_" + std::to_string(n) + " needs digit d_" + std::to_string(n - 1) +
                          " of " + d.to_string());
  }
  std::vector<BinaryWord> s;
  s.push_back(BinaryWord::parse("b"));
  s.push_back(BinaryWord::parse("a"));
  for (std::size_t k = 0; k < n; ++k) {
    BinaryWord next = s[k + 1].power(d[k]);
    next.append(s[k]);
    s.push_back(std::move(next));
  }
  return s;
}

BinaryWord characteristic_prefix(const DirectiveSequence& d, std::size_t length) {
  if (length == 0) return {};
  BinaryWord prev = BinaryWord::parse("b");
  BinaryWord cur = BinaryWord::parse("a");
  for (std::size_t k = 0;; ++k) {
    if (k >= 1 && cur.size() >= length) {
      cur.truncate(length);
      return cur;
    }
    if (!d.has(k)) {
      throw InvalidArgument("directive sequence " + d.to_string() + " is too short for a prefix of length " +
                            std::to_string(length));
    }
    BinaryWord next;
    for (DirectiveSequence::Digit j = 0; j < d[k] && next.size() < length; ++j) next.append(cur);
    if (next.size() < length) next.append(prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Factors

std::set<BinaryWord> factor_set(const BinaryWord& w, std::size_t n) {
  if (n > w.size()) throw InvalidArgument("factor length exceeds word length");
  std::set<BinaryWord> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.slice(i, n));
  return out;
}

std::size_t factor_count(const BinaryWord& w, std::size_t n) {
  if (n > w.size()) throw InvalidArgument("factor length exceeds word length");
  if (n == 0) return 1;
  if (n <= 64) {
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t key = w.slice(0, n).bits();
    seen.insert(key);
    for (std::size_t i = 1; i + n <= w.size(); ++i) {
      key = (key >> 1) | (static_cast<std::uint64_t>(w[i + n - 1]) << (n - 1));
      seen.insert(key);
    }
    return seen.size();
  }
  std::unordered_set<BinaryWord> seen;
  for (std::size_t i = 0; i + n <= w.size(); ++i) seen.insert(w.slice(i, n));
  return seen.size();
}

std::size_t stabilized(const DirectiveSequence& d, std::size_t start,
                       const std::function<std::size_t(const BinaryWord&)>& measure, std::size_t cap) {
  std::size_t len = std::max<std::size_t>(start, 1);
  if (len > cap) throw CapExceeded("stabilization start " + std::to_string(len) + " exceeds cap");
  std::size_t prev = measure(characteristic_prefix(d, len));
  while (len <= cap / 2) {
    len *= 2;
    const std::size_t cur = measure(characteristic_prefix(d, len));
    if (cur == prev) return cur;
    prev = cur;
  }
  throw CapExceeded("statistic did not stabilize within " + std::to_string(cap) + " symbols");
}

std::size_t characteristic_complexity(const DirectiveSequence& d, std::size_t n, std::size_t cap) {
  return stabilized(
      d, std::max<std::size_t>(256, 8 * (n + 1)),
      [n](const BinaryWord& w) { return factor_count(w, n); }, cap);
}

BalanceReport is_balanced(const BinaryWord& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> ones(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ones[i + 1] = ones[i] + static_cast<std::size_t>(w[i]);
  for (std::size_t len = 2; len <= n; ++len) {
    std::size_t lo = ones[len], hi = ones[len];
    std::size_t lo_at = 0, hi_at = 0;
    for (std::size_t i = 1; i + len <= n; ++i) {
      const std::size_t c = ones[i + len] - ones[i];
      if (c < lo) {
        lo = c;
        lo_at = i;
      } else if (c > hi) {
        hi = c;
        hi_at = i;
      }
      if (hi - lo >= 2) {
        return {false, BalanceWitness{1, w.slice(lo_at, len), w.slice(hi_at, len)}};
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// n-partitions

NPartition n_partition(const DirectiveSequence& d, std::size_t m, std::size_t length) {
  // q[i + 1] = |s_i|, saturating at `limit`.
  const std::size_t limit = std::numeric_limits<std::size_t>::max() / 4;
  std::vector<std::size_t> q{1, 1};
  auto len_of = [&](long idx) { return q[static_cast<std::size_t>(idx + 1)]; };
  std::size_t top = 0;
  while (top < std::max<std::size_t>(m, 1) || q.back() < length) {
    if (!d.has(top)) {
      throw InvalidArgument("n-partition needs digit d_" + std::to_string(top) + " of " + d.to_string());
    }
    const std::size_t digit = static_cast<std::size_t>(std::min<DirectiveSequence::Digit>(d[top], limit));
    const std::size_t next = digit > (limit - q[top]) / std::max<std::size_t>(q[top + 1], 1)
                                 ? limit
                                 : digit * q[top + 1] + q[top];
    q.push_back(next);
    ++top;
  }

  NPartition part;
  part.m = m;
  std::vector<long> stack{static_cast<long>(top)};
  const long mm = static_cast<long>(m);
  while (!stack.empty()) {
    const long t = stack.back();
    stack.pop_back();
    if (t <= mm) {
      if (part.covered + len_of(t) > length) break;
      part.blocks.push_back(t);
      part.starts.push_back(part.covered);
      part.covered += len_of(t);
      continue;
    }
    // s_t = s_{t-1}^{d_{t-1}} s_{t-2}, pushed right to left.
    // Copies that cannot fit are never reached, so the push count is clamped.
    const auto fit = static_cast<DirectiveSequence::Digit>((length - part.covered) / len_of(t - 1) + 1);
    stack.push_back(t - 2);
    const auto copies = std::min(d[static_cast<std::size_t>(t - 1)], fit);
    for (DirectiveSequence::Digit j = 0; j < copies; ++j) stack.push_back(t - 1);
  }
  return part;
}

}  // namespace sturm
