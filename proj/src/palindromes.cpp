#include "sturm/palindromes.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <iostream>
#include <limits>
#include <string>

#include "sturm/error.hpp"

namespace sturm {

namespace {

// Palindromic tree: one node per distinct nonempty palindromic factor plus
// the two roots (length -1 and 0).
class Eertree {
 public:
  explicit Eertree(std::size_t capacity) {
    nodes_.reserve(capacity + 2);
    nodes_.push_back({-1, 0, {0, 0}});  // imaginary root
    nodes_.push_back({0, 0, {0, 0}});   // empty palindrome
  }

  // Appends w[i] (the word so far is w[0..i]); returns the node of the
  // longest palindromic suffix.
  std::size_t add(const BinaryWord& w, std::size_t i) {
    const int c = w[i];
    std::size_t cur = suffix_for(w, i, last_);
    if (nodes_[cur].next[c] == 0) {
      const long len = nodes_[cur].len + 2;
      std::size_t link = 1;
      if (len > 1) link = nodes_[suffix_for(w, i, nodes_[cur].link)].next[c];
      nodes_.push_back({len, link, {0, 0}});
      nodes_[cur].next[c] = nodes_.size() - 1;
    }
    last_ = nodes_[cur].next[c];
    return last_;
  }

  long len(std::size_t v) const { return nodes_[v].len; }
  std::size_t link(std::size_t v) const { return nodes_[v].link; }
  std::size_t palindromes() const { return nodes_.size() - 2; }

 private:
  struct Node {
    long len;
    std::size_t link;
    std::array<std::size_t, 2> next;
  };

  std::size_t suffix_for(const BinaryWord& w, std::size_t i, std::size_t v) const {
    for (;;) {
      const long start = static_cast<long>(i) - nodes_[v].len - 1;
      if (start >= 0 && w[static_cast<std::size_t>(start)] == w[i]) return v;
      if (v == 0) return 0;  // length -1 root always matches
      v = nodes_[v].link;
    }
  }

  std::vector<Node> nodes_;
  std::size_t last_ = 1;
};

const BinaryWord& standard_at(const std::vector<BinaryWord>& s, long i) {
  return s[static_cast<std::size_t>(i + 1)];
}

}  // namespace

bool is_palindrome(const BinaryWord& w) {
  for (std::size_t i = 0, j = w.size(); i + 1 < j; ++i, --j) {
    if (w[i] != w[j - 1]) return false;
  }
  return true;
}

PalindromeIndex::PalindromeIndex(const BinaryWord& w)
    : size_(w.size()), odd_(w.size(), 0), even_(w.size(), 0) {
  const long n = static_cast<long>(size_);
  for (long i = 0, l = 0, r = -1; i < n; ++i) {
    long k = i > r ? 1 : std::min<long>(static_cast<long>(odd_[l + r - i]), r - i + 1);
    while (i - k >= 0 && i + k < n && w[i - k] == w[i + k]) ++k;
    odd_[i] = static_cast<std::size_t>(k);
    if (i + k - 1 > r) {
      l = i - k + 1;
      r = i + k - 1;
    }
  }
  for (long i = 0, l = 0, r = -1; i < n; ++i) {
    long k = i > r ? 0 : std::min<long>(static_cast<long>(even_[l + r - i + 1]), r - i + 1);
    while (i - k - 1 >= 0 && i + k < n && w[i - k - 1] == w[i + k]) ++k;
    even_[i] = static_cast<std::size_t>(k);
    if (i + k - 1 > r) {
      l = i - k;
      r = i + k - 1;
    }
  }
}

bool PalindromeIndex::is_palindrome(std::size_t pos, std::size_t length) const {
  if (pos + length > size_) throw InvalidArgument("PalindromeIndex: range past the word");
  if (length == 0) return true;
  if (length % 2 == 1) return odd_[pos + length / 2] >= (length + 1) / 2;
  return even_[pos + length / 2] >= length / 2;
}

std::vector<std::size_t> PalindromeIndex::starting_at(std::size_t pos,
                                                      std::size_t max_length) const {
  if (pos >= size_) throw InvalidArgument("palindromes_starting_at: position past the word");
  std::vector<std::size_t> lengths;
  const std::size_t limit = std::min(max_length, size_ - pos);
  for (std::size_t len = 1; len <= limit; ++len) {
    if (is_palindrome(pos, len)) lengths.push_back(len);
  }
  return lengths;
}

std::vector<std::size_t> palindromes_starting_at(const BinaryWord& w, std::size_t pos,
                                                 std::size_t max_length) {
  return PalindromeIndex(w).starting_at(pos, max_length);
}

bool has_power(const BinaryWord& w, std::size_t k) {
  if (k == 0) throw InvalidArgument("has_power: k must be positive");
  if (k == 1) return !w.empty();
  const std::size_t n = w.size();
  for (std::size_t p = 1; p * k <= n; ++p) {
    std::size_t run = 0;
    for (std::size_t i = 0; i + p < n; ++i) {
      run = w[i] == w[i + p] ? run + 1 : 0;
      if (run >= (k - 1) * p) return true;
    }
  }
  return false;
}

PalindromeCensus distinct_palindromic_factors(const BinaryWord& u) {
  Eertree tree(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) tree.add(u, i);
  PalindromeCensus census;
  census.count = tree.palindromes() + 1;
  census.rich = census.count == u.size() + 1;
  return census;
}

std::size_t palindrome_factor_count(const DirectiveSequence& d, std::size_t n, std::size_t cap) {
  if (n == 0) throw InvalidArgument("palindrome_factor_count: n must be positive");
  const auto measure = [n](const BinaryWord& w) {
    std::size_t count = 0;
    for (const auto& f : factor_set(w, n)) count += is_palindrome(f);
    return count;
  };
  return stabilized(d, std::max<std::size_t>(256, 8 * (n + 1)), measure, cap);
}

BinaryWord central_word(const DirectiveSequence& d, std::size_t n, DirectiveSequence::Digit j) {
  if (!d.has(n)) {
    throw InvalidArgument("central_word: directive sequence has no digit " + std::to_string(n));
  }
  if (j > d[n]) {
    throw InvalidArgument("central_word: j = " + std::to_string(j) + " exceeds d_" +
                          std::to_string(n) + " = " + std::to_string(d[n]));
  }
  const auto s = standard_words(d, n);
  BinaryWord c = standard_at(s, static_cast<long>(n)).power(j + 1);
  c.append(standard_at(s, static_cast<long>(n) - 1));
  c.truncate(c.size() - 2);
  return c;
}

int CharacteristicWord::at(std::uint64_t i) {
  if (i == 0) throw InvalidArgument("CharacteristicWord: positions start at 1");
  return prefix(i)[i - 1];
}

BinaryWord CharacteristicWord::factor(const PalindromeOccurrence& occ) {
  if (occ.p1 > occ.p2) throw InvalidArgument("occurrence needs p1 <= p2");
  return prefix(occ.p2).slice(occ.p1, occ.p2 - occ.p1);
}

const BinaryWord& CharacteristicWord::prefix(std::uint64_t length) {
  if (prefix_.size() < length) {
    prefix_ = characteristic_prefix(d_, std::max<std::uint64_t>(length, 2 * prefix_.size()));
  }
  return prefix_;
}

MaximalExtension maximal_palindromic_extension(CharacteristicWord& w,
                                               const PalindromeOccurrence& occ) {
  if (!is_palindrome(w.factor(occ))) {
    throw InvalidArgument("(" + std::to_string(occ.p1) + ".." + std::to_string(occ.p2) +
                          "] is not a palindrome");
  }
  const BinaryWord& s = w.prefix(occ.p1 + occ.p2 + 1);
  std::uint64_t a = occ.p1, b = occ.p2;
  // s[a] and s[b+1] in 1-based terms.
  while (a >= 1 && s[a - 1] == s[b]) {
    --a;
    ++b;
  }
  MaximalExtension ext{{a, b}, 0, 0};
  const BinaryWord word = s.slice(a, b - a);

  const DirectiveSequence& d = w.directive();
  bool found = false;
  BigInt q_prev = 1, q = 1;  // q_{m-1}, q_m
  for (std::size_t m = 0; d.has(m) && q + q_prev - 2 <= word.size(); ++m) {
    for (DirectiveSequence::Digit j = d[m] + 1; j-- > 0;) {
      if (BigInt(j + 1) * q + q_prev - 2 != word.size()) continue;
      if (central_word(d, m, j) != word) continue;
      if (!found || (ext.j == 0 && j > 0)) {
        ext.m = m;
        ext.j = j;
        found = true;
      }
    }
    const BigInt next = BigInt(d[m]) * q + q_prev;
    q_prev = q;
    q = next;
  }
  if (!found) {
    throw TheoremViolation("maximal extension (" + std::to_string(a) + ".." + std::to_string(b) +
                           "] is not a central word");
  }
  return ext;
}

namespace {

std::uint64_t to_u64(const BigInt& x) { return x.convert_to<std::uint64_t>(); }

// p2 digits x_n .. x_{m+1} y (d_{m-1} - x_{m-1}) .. (d_0 - x_0).
OstrowskiRep pivot_rep(const DirectiveSequence& d, const std::vector<std::uint64_t>& x,
                       std::size_t m, std::uint64_t y) {
  std::vector<std::uint64_t> digits(std::max(x.size(), m + 1), 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::uint64_t xi = i < x.size() ? x[i] : 0;
    if (i > m) digits[i] = xi;
    if (i == m) digits[i] = y;
    if (i < m) digits[i] = d[i] - xi;
  }
  return OstrowskiRep(d, std::move(digits));
}

std::optional<TprWitness> constructive_witness(CharacteristicWord& w,
                                               const PalindromeOccurrence& occ) {
  const DirectiveSequence& d = w.directive();
  const MaximalExtension ext = maximal_palindromic_extension(w, occ);
  if (ext.j == 0) return std::nullopt;
  const std::size_t m = ext.m;
  const StandardLengths q(d, m);
  const std::uint64_t qm = to_u64(q[static_cast<long>(m)]);
  const std::uint64_t l = occ.p1 - ext.occurrence.p1;
  const std::uint64_t k = l / qm;

  // Where s_m occurs right after position r, r is canonical with zeros below m.
  // k < j guarantees the occurrence inside s_m^j; for k = j it comes from c_m
  // starting with s_m, which fails only for short c_m.
  const std::uint64_t r = occ.p1 - l + k * qm;
  const BinaryWord& s = w.prefix(r + qm);
  if (!s.matches_at(r, standard_words(d, m)[m + 1])) return std::nullopt;
  const OstrowskiRep high = encode(r, d);
  for (std::size_t i = 0; i < std::min(m, high.size()); ++i) {
    if (high.digit(i) != 0) return std::nullopt;
  }
  const OstrowskiRep low = encode(l - k * qm, d);
  if (low.size() > m) return std::nullopt;

  std::vector<std::uint64_t> x(std::max(high.size(), low.size()), 0);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = high.digit(i) + low.digit(i);
  const long y = static_cast<long>(m < x.size() ? x[m] : 0) - 2 * static_cast<long>(k) +
                 static_cast<long>(ext.j);
  if (y < 0) return std::nullopt;

  TprWitness witness{OstrowskiRep(d, x), m, static_cast<std::uint64_t>(y),
                     pivot_rep(d, x, m, static_cast<std::uint64_t>(y)), false};
  if (!tpr_check_witness(d, occ, witness)) return std::nullopt;
  return witness;
}

std::optional<TprWitness> exhaustive_witness(const DirectiveSequence& d,
                                             const PalindromeOccurrence& occ) {
  // Lengths q_0 .. q_T with q_T <= p2 < q_{T+1}, plus q_{T+1}.
  std::vector<std::uint64_t> q{1};
  std::uint64_t previous = 1;
  while (q.back() <= occ.p2 && d.has(q.size() - 1)) {
    const std::uint64_t next = d[q.size() - 1] * q.back() + previous;
    previous = q.back();
    q.push_back(next);
  }
  std::optional<TprWitness> result;
  std::vector<std::uint64_t> x(q.size(), 0);

  const auto try_pivots = [&] {
    for (std::size_t m = 0; m < q.size() && !result; ++m) {
      // p2 - sum_{i>m} x_i q_i - sum_{i<m} (d_i - x_i) q_i must be y q_m.
      long long rest = static_cast<long long>(occ.p2);
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (i > m) rest -= static_cast<long long>(x[i] * q[i]);
        if (i < m) rest -= static_cast<long long>((d[i] - x[i]) * q[i]);
      }
      if (rest < 0 || rest % static_cast<long long>(q[m]) != 0) continue;
      const auto y = static_cast<std::uint64_t>(rest / static_cast<long long>(q[m]));
      TprWitness witness{OstrowskiRep(d, x), m, y, pivot_rep(d, x, m, y), true};
      if (tpr_check_witness(d, occ, witness)) result = witness;
    }
  };
  std::function<void(long, std::uint64_t)> legal = [&](long i, std::uint64_t rest) {
    if (result) return;
    if (i < 0) {
      if (rest == 0) try_pivots();
      return;
    }
    const auto at = static_cast<std::size_t>(i);
    const std::uint64_t top = std::min<std::uint64_t>(d[at], rest / q[at]);
    for (std::uint64_t k = 0; k <= top && !result; ++k) {
      x[at] = k;
      legal(i - 1, rest - k * q[at]);
    }
    x[at] = 0;
  };
  legal(static_cast<long>(q.size()) - 1, occ.p1);
  return result;
}

}  // namespace

bool tpr_check_witness(const DirectiveSequence& d, const PalindromeOccurrence& occ,
                       const TprWitness& witness) {
  const OstrowskiRep& x = witness.p1_rep;
  if (!is_legal(x) || decode(x) != occ.p1) return false;
  const std::size_t width = std::max(x.size(), witness.m + 1);
  if (!d.has(witness.m)) return false;
  for (std::size_t i = 0; i < std::max(width, witness.p2_rep.size()); ++i) {
    std::uint64_t expected = x.digit(i);
    if (i == witness.m) expected = witness.y_m;
    if (i < witness.m) expected = d[i] - x.digit(i);
    if (witness.p2_rep.digit(i) != expected) return false;
  }
  return decode(witness.p2_rep) == occ.p2 && is_valid(witness.p2_rep);
}

TprWitness tpr_find_witness(CharacteristicWord& w, const PalindromeOccurrence& occ,
                            bool allow_fallback) {
  if (occ.p1 >= occ.p2) throw InvalidArgument("tpr_find_witness: empty occurrence");
  if (auto witness = constructive_witness(w, occ)) return *witness;
  if (allow_fallback) {
    std::clog << "tpr: constructive split failed for (" << occ.p1 << ".." << occ.p2
              << "], searching legal representations\n";
    if (auto witness = exhaustive_witness(w.directive(), occ)) return *witness;
  }
  throw TheoremViolation("no witness for the palindrome (" + std::to_string(occ.p1) + ".." +
                         std::to_string(occ.p2) + "]");
}

std::vector<PalindromeOccurrence> palindromic_occurrences(const DirectiveSequence& d,
                                                          std::uint64_t max_p2) {
  const BinaryWord s = characteristic_prefix(d, max_p2);
  const PalindromeIndex index(s);
  std::vector<PalindromeOccurrence> out;
  for (std::uint64_t p2 = 1; p2 <= max_p2; ++p2) {
    for (std::uint64_t p1 = 0; p1 < p2; ++p1) {
      if (index.is_palindrome(p1, p2 - p1)) out.push_back({p1, p2});
    }
  }
  return out;
}

std::vector<std::uint64_t> z_vector(const OstrowskiRep& rep) {
  const DirectiveSequence& d = rep.directive();
  std::vector<std::uint64_t> z(rep.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    if (!d.has(i)) throw InvalidArgument("z_vector: no directive digit " + std::to_string(i));
    const std::uint64_t x = rep.digit(i);
    z[i] = std::min(x, x > d[i] ? x - d[i] : d[i] - x);
  }
  return z;
}

ZdReport zd_max_gap(const DirectiveSequence& d, std::uint64_t n_max, std::uint64_t cap) {
  if (n_max > cap) {
    throw CapExceeded("zd_max_gap: N = " + std::to_string(n_max) + " exceeds cap " +
                      std::to_string(cap));
  }
  ZdReport report;
  report.gap_by_n.assign(n_max + 1, 0);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const auto reps = enumerate_valid_reps(n, d, cap);
    const std::vector<OstrowskiRep> list(reps.begin(), reps.end());
    std::vector<std::vector<std::uint64_t>> zs;
    for (const auto& rep : list) zs.push_back(z_vector(rep));
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        const std::size_t width = std::max(zs[a].size(), zs[b].size());
        for (std::size_t i = 0; i < width; ++i) {
          const std::uint64_t za = i < zs[a].size() ? zs[a][i] : 0;
          const std::uint64_t zb = i < zs[b].size() ? zs[b][i] : 0;
          const std::uint64_t gap = za > zb ? za - zb : zb - za;
          report.gap_by_n[n] = std::max(report.gap_by_n[n], gap);
          if (gap > report.max_gap) {
            report.max_gap = gap;
            report.witness = ZdWitness{n, i, list[a], list[b]};
          }
        }
      }
    }
  }
  return report;
}

std::vector<std::size_t> prefix_pal_lengths(const BinaryWord& u) {
  std::vector<std::size_t> best(u.size() + 1, std::numeric_limits<std::size_t>::max());
  best[0] = 0;
  Eertree tree(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    // Every palindromic suffix of u[0..i] lies on the suffix-link chain.
    for (std::size_t v = tree.add(u, i); tree.len(v) > 0; v = tree.link(v)) {
      const std::size_t start = i + 1 - static_cast<std::size_t>(tree.len(v));
      best[i + 1] = std::min(best[i + 1], best[start] + 1);
    }
  }
  return best;
}

std::size_t pal_length(const BinaryWord& u) { return prefix_pal_lengths(u).back(); }

std::vector<std::pair<std::size_t, std::size_t>> pal_length_profile(const DirectiveSequence& d,
                                                                    std::size_t length,
                                                                    std::size_t cap) {
  if (length > cap) {
    throw CapExceeded("pal_length_profile: length " + std::to_string(length) + " exceeds cap " +
                      std::to_string(cap));
  }
  const auto best = prefix_pal_lengths(characteristic_prefix(d, length));
  std::vector<std::pair<std::size_t, std::size_t>> records;
  for (std::size_t i = 1; i < best.size(); ++i) {
    if (records.empty() || best[i] > records.back().second) records.emplace_back(i, best[i]);
  }
  return records;
}

HardPrefix construct_hard_prefix(const DirectiveSequence& d, std::size_t q,
                                 std::size_t search_limit) {
  HardPrefix out;
  if (q == 0) {
    out.n = 1;
    out.rep = encode(1, d);
    return out;
  }
  const std::uint64_t threshold = 6 * q + 2;
  for (std::size_t i = 0; i < search_limit && d.has(i) && out.positions.size() < q + 1; ++i) {
    if (d[i] >= threshold) out.positions.push_back(i);
  }
  if (out.positions.size() < q + 1) {
    throw InvalidArgument("construct_hard_prefix: need " + std::to_string(q + 1) +
                          " digits >= " + std::to_string(threshold) + " among the first " +
                          std::to_string(search_limit) + " of " + d.to_string());
  }
  std::vector<std::uint64_t> digits(out.positions.back() + 1, 0);
  for (std::size_t m : out.positions) digits[m] = 3 * q + 1;
  out.rep = OstrowskiRep(d, std::move(digits));
  out.n = decode(out.rep);
  return out;
}

}  // namespace sturm
