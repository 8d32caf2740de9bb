#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qexp/polynomial.hpp"
#include "qexp/words.hpp"

using namespace qexp;

namespace {

const Alphabet one(1);
const Alphabet two(2);

Word W(const char* s, Alphabet a = one) { return Word::parse(s, a); }
EpSequence S(const char* s, Alphabet a = one) { return EpSequence::parse(s, a); }

// Brute-force shift conditions over all distinct shifts, on plain digits.
bool naive_admissible_v(const oracle::Ep& s, int M) {
  const std::size_t n = s.pre.size() + s.period.size();
  const std::size_t len = 4 * n + 8;
  const oracle::Digits alpha = s.prefix(len + n);
  const oracle::Digits top(alpha.begin(), alpha.begin() + static_cast<long>(len));
  const oracle::Digits bottom = oracle::bar(top, M);
  for (std::size_t k = 0; k < n; ++k) {
    const oracle::Digits shifted(alpha.begin() + static_cast<long>(k), alpha.begin() + static_cast<long>(k + len));
    if (top < shifted || shifted < bottom) return false;
  }
  return true;
}

bool naive_quasi_greedy(const oracle::Ep& s) {
  if (s.period == oracle::Digits(s.period.size(), 0)) return false;
  const std::size_t n = s.pre.size() + s.period.size();
  const std::size_t len = 4 * n + 8;
  const oracle::Digits alpha = s.prefix(len + n);
  const oracle::Digits top(alpha.begin(), alpha.begin() + static_cast<long>(len));
  for (std::size_t k = 1; k < n + 1; ++k) {
    const oracle::Digits shifted(alpha.begin() + static_cast<long>(k), alpha.begin() + static_cast<long>(k + len));
    if (top < shifted) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("reflection") {
  CHECK(reflect(W("110")) == W("001"));
  CHECK(reflect(W("2110", two)) == W("0112", two));
  CHECK(reflect(reflect(W("10"))) == W("10"));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const int M = 1 + static_cast<int>(rng() % 4);
    std::vector<Digit> d(1 + rng() % 10);
    for (auto& x : d) x = static_cast<int>(rng() % (M + 1));
    const Word w(Alphabet(M), d);
    CHECK(reflect(reflect(w)) == w);
  }
}

TEST_CASE("increment and decrement of the last digit") {
  CHECK(increment_last(W("10")) == W("11"));
  CHECK(decrement_last(W("21", two)) == W("20", two));
  CHECK_THROWS_AS(increment_last(W("11")), Error);
  try {
    increment_last(W("11"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DigitOverflow);
  }
  try {
    decrement_last(W("10"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DigitUnderflow);
  }
}

TEST_CASE("lexicographic order pads words with zeros") {
  CHECK(lex_compare(W("10"), W("110")) < 0);
  CHECK(lex_compare(S("(10)"), S("11(01)")) < 0);
  CHECK(lex_compare(S("(110)"), S("(110)")) == 0);
  CHECK(lex_compare(W("10"), W("100")) == 0);
  CHECK(lex_compare(W("1"), S("1(0)")) == 0);
  CHECK(lex_compare(S("(10)"), W("11")) < 0);
}

TEST_CASE("eventually periodic sequences are canonical") {
  CHECK(S("1010(10)") == S("(10)"));
  CHECK(S("(1010)") == S("(10)"));
  CHECK(S("11(01)") == S("1(10)"));
  CHECK(S("11(01)").str() == "1(10)");
  CHECK(S("(110)").shift(1) == S("(101)"));
  CHECK(S("2(1)", two).at(5) == 1);
  CHECK_THROWS_AS(S("10"), Error);
  CHECK_THROWS_AS(Word::parse("", one), Error);
  CHECK_THROWS_AS(Word::parse("12", one), Error);
  CHECK(Word::parse("[10,3,0]", Alphabet(10)).size() == 3);
}

TEST_CASE("admissibility examples") {
  CHECK(is_admissible_v(S("(10)")));
  CHECK(is_admissible_v(S("(110)")));
  CHECK_FALSE(is_admissible_v(S("(100)")));
  CHECK(is_quasi_greedy_admissible(S("(1)")));
  CHECK(is_quasi_greedy_admissible(S("11(01)")));
  CHECK_FALSE(is_quasi_greedy_admissible(S("(01)")));
  CHECK_FALSE(is_quasi_greedy_admissible(S("1(0)")));
}

TEST_CASE("admissibility agrees with brute-force shift enumeration") {
  for (int M = 1; M <= 2; ++M) {
    for (std::size_t total = 1; total <= 8; ++total) {
      for (std::size_t p = 0; p < total; ++p) {
        const std::size_t m = total - p;
        if (std::pow(M + 1, total) > 7000) continue;
        for (const auto& w : oracle::all_words(M, total)) {
          oracle::Ep e{{w.begin(), w.begin() + static_cast<long>(p)}, {w.begin() + static_cast<long>(p), w.end()}};
          const EpSequence s(Alphabet(M), e.pre, e.period);
          CHECK_MESSAGE(is_admissible_v(s) == naive_admissible_v(e, M), s.str());
          CHECK_MESSAGE(is_quasi_greedy_admissible(s) == naive_quasi_greedy(e), s.str());
        }
        (void)m;
      }
    }
  }
}

TEST_CASE("fundamental words") {
  CHECK(is_fundamental(W("10")));
  CHECK_FALSE(is_fundamental(W("1")));
  CHECK(is_fundamental(W("1", two)));
  CHECK(is_fundamental(W("110")));
  CHECK_FALSE(is_fundamental(W("11")));
  CHECK_THROWS_AS(FundamentalWord::parse("11", one), Error);

  for (int M = 1; M <= 3; ++M) {
    const Alphabet a(M);
    const std::size_t max_len = M == 1 ? 10 : M == 2 ? 6 : 5;
    for (std::size_t n = 1; n <= max_len; ++n) {
      for (const auto& d : oracle::all_words(M, n)) {
        const Word w(a, d);
        const bool fundamental = is_fundamental(w);
        REQUIRE_MESSAGE(fundamental == oracle::is_fundamental(d, M), w.str());
        if (!fundamental) continue;
        CHECK(w.back() < M);
        CHECK(is_admissible_v(EpSequence::periodic(w)));
        // reflect(a+) < reflect(a) <= a < a+, equality only for a = M/2.
        const Word plus = increment_last(w);
        CHECK(lex_compare(reflect(plus), reflect(w)) < 0);
        CHECK(lex_compare(w, plus) < 0);
        const auto mid = lex_compare(reflect(w), w);
        CHECK(mid <= 0);
        CHECK((mid == 0) == (n == 1 && M % 2 == 0 && w[0] == M / 2));
      }
    }
  }
}

TEST_CASE("integer polynomials") {
  const IntPoly p(std::vector<Integer>{-1, -1, 1});  // x^2 - x - 1
  CHECK(p.sign_at(Rational(1)) < 0);
  CHECK(p.sign_at(Rational(2)) > 0);
  CHECK(p(Rational(3, 2)) == Rational(-1, 4));
  const auto r = p.range_on(Rational(1), Rational(2));
  CHECK(r.lo <= -1);
  CHECK(r.hi >= 1);
  const IntPoly x3(std::vector<Integer>{0, 0, 0, 1});
  CHECK(x3.mod_monic(p).coeffs() == std::vector<Integer>{1, 2});  // x^3 = 2x + 1 mod p
  const IntPoly q = p * IntPoly(std::vector<Integer>{-2, 1});
  CHECK(gcd_over_q(q, IntPoly(std::vector<Integer>{-1, 0, 1}) * p).coeffs() == p.coeffs());
}

TEST_CASE("rationals and certified logarithms") {
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1e5"), Error);
  CHECK(to_decimal(Rational(2, 3), 3, Rounding::Down) == "0.666");
  CHECK(to_decimal(Rational(2, 3), 3, Rounding::Up) == "0.667");
  const Rational lo = log_bound(Rational(2), Rounding::Down);
  const Rational hi = log_bound(Rational(2), Rounding::Up);
  CHECK(lo < hi);
  CHECK(hi - lo < pow2_neg(150));
  CHECK(lo.get_d() == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(log_bound(Rational(1), Rounding::Up) == 0);
}
