#include <doctest.h>

#include <random>

#include "sturm/error.hpp"
#include "sturm/words.hpp"

using namespace sturm;

namespace {

ExactReal Q(const char* text) { return ExactReal::parse(text); }
BinaryWord W(const char* text) { return BinaryWord::parse(text); }

const DirectiveSequence kFib = DirectiveSequence::fibonacci();
const DirectiveSequence kTwos = DirectiveSequence::parse("2,(2)");

// Oracle for the lower mechanical word straight from the floor formula,
// evaluated in doubles with a margin check; only used on non-degenerate
// parameters.
std::string mechanical_by_double(double sigma, double rho, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(std::floor((i + 1) * sigma + rho) - std::floor(i * sigma + rho) > 0.5 ? '1' : '0');
  }
  return s;
}

}  // namespace

TEST_CASE("BinaryWord basics") {
  const BinaryWord w = W("abaab");
  CHECK(w.size() == 5);
  CHECK(w.str() == "01001");
  CHECK(w.str(Alphabet::letters) == "abaab");
  CHECK(w.reversed().str() == "10010");
  CHECK(w.slice(1, 3).str() == "100");
  CHECK(w.power(2).str() == "0100101001");
  CHECK(w.count_ones() == 2);
  CHECK(BinaryWord().empty());
  CHECK(W("") == BinaryWord());
  CHECK(W("0") < W("01"));
  CHECK(W("01") < W("1"));
  CHECK_THROWS_AS(W("0a"), InvalidArgument);
  CHECK_THROWS_AS(W("012"), InvalidArgument);
}

TEST_CASE("BinaryWord slices across block boundaries match symbolwise copies") {
  std::mt19937_64 rng(1);
  BinaryWord w;
  for (int i = 0; i < 300; ++i) w.push_back(static_cast<int>(rng() & 1));
  std::uniform_int_distribution<std::size_t> pos(0, 299);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t a = pos(rng);
    const std::size_t len = pos(rng) % (300 - a + 1);
    const BinaryWord s = w.slice(a, len);
    BinaryWord slow;
    for (std::size_t i = 0; i < len; ++i) slow.push_back(w[a + i]);
    CHECK(s == slow);
    CHECK(s.hash() == slow.hash());
    CHECK(w.matches_at(a, s));
  }
}

TEST_CASE("mechanical_word examples") {
  const ExactReal tau = Q("(3-sqrt(5))/2");
  CHECK(mechanical_word({tau, tau, Flavor::lower}, 8).str() == "01001010");
  CHECK(mechanical_word({tau, tau, Flavor::lower}, 8) == characteristic_prefix(kFib, 8));
  CHECK(mechanical_word({Q("1/2"), Q("0"), Flavor::lower}, 6).str() == "010101");
  CHECK(mechanical_word({Q("sqrt(2)-1"), Q("0"), Flavor::lower}, 1).str() == "0");
  // On a lattice hit the flavors differ: sigma = 1/2, rho = 0 hits at 0.
  CHECK(mechanical_word({Q("1/2"), Q("0"), Flavor::upper}, 6).str() == "101010");
  CHECK_THROWS_AS(mechanical_word({Q("1"), Q("0"), Flavor::lower}, 3), InvalidArgument);
  CHECK_THROWS_AS(mechanical_word({Q("1/2"), Q("1"), Flavor::lower}, 3), InvalidArgument);
}

TEST_CASE("mechanical_word matches a floating point floor oracle") {
  CHECK(mechanical_word({Q("sqrt(2)-1"), Q("1/3"), Flavor::lower}, 200).str() ==
        mechanical_by_double(std::sqrt(2.0) - 1, 1.0 / 3, 200));
  CHECK(mechanical_word({Q("sqrt(7)/7"), Q("2/9"), Flavor::lower}, 200).str() ==
        mechanical_by_double(std::sqrt(7.0) / 7, 2.0 / 9, 200));
}

TEST_CASE("lower mechanical words satisfy the fractional part rule (property)") {
  std::mt19937_64 rng(2);
  const char* slopes[] = {"sqrt(2)-1", "(3-sqrt(5))/2", "sqrt(7)/7", "2/7", "3/5", "(2-sqrt(2))/2"};
  std::uniform_int_distribution<int> num(0, 40);
  for (const char* slope : slopes) {
    const ExactReal sigma = Q(slope);
    for (int trial = 0; trial < 5; ++trial) {
      const ExactReal rho = ExactReal::rational(num(rng), 41);
      const BinaryWord w = mechanical_word({sigma, rho, Flavor::lower}, 60);
      for (std::size_t i = 0; i < w.size(); ++i) {
        const ExactReal x = frac(ExactReal(static_cast<std::int64_t>(i)) * sigma + rho);
        CHECK((w[i] == 0) == (x <= ExactReal(1) - sigma));
      }
    }
  }
}

TEST_CASE("rational slopes give periodic mechanical words") {
  for (auto [p, q] : {std::pair{1, 3}, {2, 5}, {3, 7}, {5, 8}}) {
    const ExactReal sigma = ExactReal::rational(p, q);
    for (int r = 0; r < q; ++r) {
      const BinaryWord w = mechanical_word({sigma, ExactReal::rational(r, 2 * q), Flavor::lower}, 120);
      for (std::size_t i = 0; i + q < w.size(); ++i) CHECK(w[i] == w[i + q]);
      CHECK(w.slice(0, q).count_ones() == static_cast<std::size_t>(p));
    }
  }
}

TEST_CASE("lower and upper words share factors for irrational slopes") {
  for (const char* slope : {"sqrt(2)-1", "(3-sqrt(5))/2", "sqrt(7)/7"}) {
    const ExactReal sigma = Q(slope);
    for (const ExactReal& rho : {Q("0"), Q("1/5"), sigma}) {
      const BinaryWord lower = mechanical_word({sigma, rho, Flavor::lower}, 3000);
      const BinaryWord upper = mechanical_word({sigma, rho, Flavor::upper}, 3000);
      for (std::size_t n = 1; n <= 20; ++n) CHECK(factor_set(lower, n) == factor_set(upper, n));
    }
  }
}

TEST_CASE("factor sets do not depend on the intercept") {
  const ExactReal sigma = Q("sqrt(2)-1");
  const BinaryWord a = mechanical_word({sigma, Q("0"), Flavor::lower}, 4000);
  const BinaryWord b = mechanical_word({sigma, Q("7/11"), Flavor::lower}, 4000);
  for (std::size_t n = 1; n <= 15; ++n) CHECK(factor_set(a, n) == factor_set(b, n));
}

TEST_CASE("rotation_word") {
  const ExactReal sigma = Q("sqrt(7)/7");
  SUBCASE("alpha = sigma recovers the mechanical word") {
    for (const char* slope : {"sqrt(7)/7", "(3-sqrt(5))/2", "sqrt(2)-1"}) {
      const ExactReal s = Q(slope);
      for (const ExactReal& rho : {Q("0"), Q("1/3"), Q("5/6")}) {
        CHECK(rotation_word(s, rho, s, 80) == mechanical_word({s, rho, Flavor::lower}, 80));
      }
    }
  }
  SUBCASE("alpha = sigma differs from the lower word only on boundary hits") {
    // {q sigma + rho} = 1 - sigma reads 0 in the rotation word but 1 in the
    // lower mechanical word.
    for (const char* slope : {"2/5", "3/7", "sqrt(2)-1"}) {
      const ExactReal s = Q(slope);
      for (const ExactReal& rho : {Q("0"), Q("1/5"), ExactReal(1) - s}) {
        const BinaryWord r = rotation_word(s, rho, s, 40);
        const BinaryWord m = mechanical_word({s, rho, Flavor::lower}, 40);
        for (std::size_t q = 0; q < 40; ++q) {
          const bool hit = frac(ExactReal(static_cast<std::int64_t>(q)) * s + rho) == ExactReal(1) - s;
          if (hit) {
            CHECK(r[q] == 0);
            CHECK(m[q] == 1);
          } else {
            CHECK(r[q] == m[q]);
          }
        }
      }
    }
  }
  SUBCASE("rho = 0 starts with 0") {
    CHECK(rotation_word(Q("sqrt(2)-1"), Q("0"), sigma, 5)[0] == 0);
    CHECK(rotation_word(Q("9/10"), Q("0"), Q("99/100"), 5)[0] == 0);
  }
  SUBCASE("symmetry ({-alpha}, {-sigma-rho})") {
    const ExactReal alpha = Q("sqrt(2)-1");
    const ExactReal rho = Q("1/3");
    const ExactReal alpha2 = frac(ExactReal(1) - alpha);
    const ExactReal rho2 = frac(ExactReal(1) - sigma - rho);
    CHECK(rotation_word(alpha, rho, sigma, 9) == rotation_word(alpha2, rho2, sigma, 9));
    // {q(sqrt2-1) + 1/3} for q = 0..8 against 1 - 1/sqrt7 = 0.6220:
    // .333 .748 .162 .576 .990 .404 .819 .233 .647
    CHECK(rotation_word(alpha, rho, sigma, 9).str() == "010010101");
  }
  SUBCASE("boundary {q alpha + rho} = 1 - sigma maps to 0") {
    // q = 1: 1/4 + 1/4 = 1/2 = 1 - sigma.
    CHECK(rotation_word(Q("1/4"), Q("1/4"), Q("1/2"), 3).str() == "001");
  }
  CHECK_THROWS_AS(rotation_word(Q("1"), Q("0"), sigma, 3), InvalidArgument);
  CHECK_THROWS_AS(rotation_word(Q("0"), Q("0"), Q("0"), 3), InvalidArgument);
}

TEST_CASE("directive sequences") {
  CHECK(DirectiveSequence::parse("1,(1)") == kFib);
  CHECK(DirectiveSequence::parse("fib") == kFib);
  CHECK(DirectiveSequence::parse("1,1,1,(1,1)").to_string() == "(1)");
  CHECK(DirectiveSequence::parse("2,(2)").to_string() == "(2)");
  CHECK(DirectiveSequence::parse("1,1,1,1,8,(1)").to_string() == "1,1,1,1,8,(1)");
  CHECK(DirectiveSequence::parse("3,1,(2,1)").to_string() == "3,(1,2)");
  CHECK(DirectiveSequence::parse("0,2,(3)")[0] == 0);
  const DirectiveSequence finite = DirectiveSequence::parse("1,2,3");
  CHECK(finite[2] == 3);
  CHECK_FALSE(finite.has(3));
  CHECK_THROWS_AS(finite[3], InvalidArgument);
  CHECK_THROWS_AS(DirectiveSequence::parse("1,0,(1)"), InvalidArgument);
  CHECK_THROWS_AS(DirectiveSequence::parse("1,(0)"), InvalidArgument);
  CHECK_THROWS_AS(DirectiveSequence::parse("1,x"), InvalidArgument);
  CHECK_THROWS_AS(DirectiveSequence::parse("(1),2"), InvalidArgument);
  for (const char* text : {"(1)", "1,1,1,1,8,(1)", "8,8,1,(1)", "0,2,(3)", "1,2,3,4"}) {
    const DirectiveSequence d = DirectiveSequence::parse(text);
    CHECK(DirectiveSequence::parse(d.to_string()) == d);
  }
}

TEST_CASE("slopes from directive sequences") {
  CHECK(kFib.slope() == Q("(3-sqrt(5))/2"));
  CHECK(kTwos.slope() == Q("(2-sqrt(2))/2"));
  CHECK(kFib.slope_cf().to_string() == "[0;2,(1)]");
  CHECK(DirectiveSequence::parse("2,3").slope() == Q("3/10"));  // [0;3,3]
}

TEST_CASE("standard_words") {
  const auto s = standard_words(kFib, 4);
  REQUIRE(s.size() == 6);
  CHECK(s[0].str(Alphabet::letters) == "b");
  CHECK(s[1].str(Alphabet::letters) == "a");
  CHECK(s[2].str(Alphabet::letters) == "ab");
  CHECK(s[3].str(Alphabet::letters) == "aba");
  CHECK(s[4].str(Alphabet::letters) == "abaab");
  CHECK(s[5].str(Alphabet::letters) == "abaababa");
  CHECK(standard_words(kTwos, 2)[3].str(Alphabet::letters) == "aabaaba");
  CHECK(standard_words(DirectiveSequence::parse("1"), 1).size() == 3);
  CHECK_THROWS_AS(standard_words(DirectiveSequence::parse("1"), 2), InvalidArgument);
}

TEST_CASE("characteristic_prefix") {
  CHECK(characteristic_prefix(kFib, 21).str(Alphabet::letters) == "abaababaabaababaababa");
  CHECK(characteristic_prefix(kTwos, 22).str(Alphabet::letters) == "aabaabaaabaabaaabaabaa");
  CHECK(characteristic_prefix(kFib, 0).empty());
  CHECK(characteristic_prefix(DirectiveSequence::parse("0,(1)"), 5).str(Alphabet::letters) == "babba");
  CHECK_THROWS_AS(characteristic_prefix(DirectiveSequence::parse("1,1"), 10), InvalidArgument);
  // Standard words are prefixes of the limit.
  const BinaryWord f = characteristic_prefix(kTwos, 5000);
  for (const auto& s : standard_words(kTwos, 7)) {
    if (s.size() > 1) CHECK(f.starts_with(s));
  }
}

TEST_CASE("coding identity with the mechanical word of slope sigma") {
  for (const char* spec : {"(1)", "(2)", "1,1,1,1,8,(1)", "3,(1,2)", "0,2,(3)"}) {
    const DirectiveSequence d = DirectiveSequence::parse(spec);
    const ExactReal sigma = d.slope();
    CHECK(characteristic_prefix(d, 600) == mechanical_word({sigma, sigma, Flavor::lower}, 600));
  }
}

TEST_CASE("factor_set examples") {
  CHECK(factor_set(W("aababababababab"), 2).size() == 3);
  const BinaryWord w = W("aabaabaaabaabaaabaabaabaaabaabaaabaabaaba");
  CHECK(factor_set(w, 3).size() == 4);
  CHECK(factor_set(w, 4).size() == 5);
  CHECK(factor_set(characteristic_prefix(kFib, 200), 10).size() == 11);
  CHECK(factor_count(characteristic_prefix(kFib, 200), 10) == 11);
  CHECK(factor_set(w, 0).size() == 1);
  CHECK_THROWS_AS(factor_set(W("01"), 3), InvalidArgument);
}

TEST_CASE("factor_count agrees with factor_set beyond 64 symbols") {
  const BinaryWord f = characteristic_prefix(kTwos, 3000);
  for (std::size_t n : {1u, 7u, 63u, 64u, 65u, 100u}) CHECK(factor_count(f, n) == factor_set(f, n).size());
}

TEST_CASE("Sturmian complexity n + 1") {
  for (const char* spec : {"(1)", "(2)", "1,1,1,1,8,(1)", "3,(1,2)"}) {
    const DirectiveSequence d = DirectiveSequence::parse(spec);
    for (std::size_t n = 0; n <= 30; ++n) CHECK(characteristic_complexity(d, n) == n + 1);
  }
  CHECK_THROWS_AS(characteristic_complexity(kFib, 30, 100), CapExceeded);
}

TEST_CASE("prefixes of characteristic words are left special") {
  for (const DirectiveSequence& d : {kFib, kTwos}) {
    const BinaryWord f = characteristic_prefix(d, 20000);
    for (std::size_t n = 0; n <= 40; ++n) {
      const auto facs = factor_set(f, n + 1);
      BinaryWord zero_u(1, 0), one_u(1, 1);
      zero_u.append(f.prefix(n));
      one_u.append(f.prefix(n));
      CHECK(facs.count(zero_u) == 1);
      CHECK(facs.count(one_u) == 1);
    }
  }
}

TEST_CASE("is_balanced") {
  const BalanceReport bad = is_balanced(W("0011"));
  CHECK_FALSE(bad.balanced);
  REQUIRE(bad.witness);
  CHECK(bad.witness->symbol == 1);
  CHECK(bad.witness->lighter.str() == "00");
  CHECK(bad.witness->heavier.str() == "11");
  CHECK(is_balanced(W("aabaabaaabaabaaabaabaabaaabaabaaabaabaaba")).balanced);
  CHECK(is_balanced(W("1001")).balanced);
  CHECK(is_balanced(BinaryWord()).balanced);
  CHECK(is_balanced(characteristic_prefix(kFib, 500)).balanced);
  CHECK_FALSE(is_balanced(W("010011")).balanced);
}

TEST_CASE("is_balanced agrees with a pairwise factor oracle on all short words") {
  for (std::size_t n = 0; n <= 10; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const BinaryWord w = BinaryWord::from_bits(bits, n);
      bool balanced = true;
      for (std::size_t len = 1; len <= n && balanced; ++len) {
        for (std::size_t i = 0; i + len <= n && balanced; ++i) {
          for (std::size_t j = 0; j + len <= n && balanced; ++j) {
            const auto ci = w.slice(i, len).count_ones(), cj = w.slice(j, len).count_ones();
            balanced = (ci > cj ? ci - cj : cj - ci) <= 1;
          }
        }
      }
      CHECK(is_balanced(w).balanced == balanced);
    }
  }
}

TEST_CASE("n_partition") {
  const NPartition p = n_partition(kFib, 2, 8);
  CHECK(p.blocks == std::vector<long>{2, 1, 2});
  CHECK(p.covered == 8);
  CHECK(p.starts == std::vector<std::size_t>{0, 3, 5});

  const NPartition trunc = n_partition(kFib, 2, 10);
  CHECK(trunc.covered == 8);  // aba ab aba | aba ab
  CHECK(n_partition(kFib, 2, 11).covered == 11);

  const NPartition letters = n_partition(kTwos, 0, 30);
  const BinaryWord f = characteristic_prefix(kTwos, 30);
  REQUIRE(letters.blocks.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) CHECK(letters.blocks[i] == (f[i] ? -1 : 0));

  for (const DirectiveSequence& d : {kFib, kTwos}) {
    for (std::size_t m = 0; m <= 5; ++m) {
      const NPartition part = n_partition(d, m, 700);
      const auto s = standard_words(d, m);
      BinaryWord glued;
      for (long b : part.blocks) glued.append(s[static_cast<std::size_t>(b + 1)]);
      CHECK(glued == characteristic_prefix(d, part.covered));
    }
  }
  CHECK_THROWS_AS(n_partition(DirectiveSequence::parse("1,1"), 4, 10), InvalidArgument);
}

TEST_CASE("occurrences of s_m start on m-partition boundaries") {
  const BinaryWord f = characteristic_prefix(kFib, 400);
  for (std::size_t m = 0; m <= 4; ++m) {
    const BinaryWord sm = standard_words(kFib, m)[m + 1];
    const NPartition part = n_partition(kFib, m, 400);
    std::set<std::size_t> starts(part.starts.begin(), part.starts.end());
    starts.insert(part.covered);
    for (std::size_t r = 0; r <= 100; ++r) {
      if (f.matches_at(r, sm)) CHECK(starts.count(r) == 1);
    }
  }
}
