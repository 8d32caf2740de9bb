#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qexp/composition.hpp"
#include "qexp/subshift.hpp"

using namespace qexp;

namespace {

const Alphabet one(1);
const Alphabet two(2);

EpSequence S(const char* s, Alphabet a = one) { return EpSequence::parse(s, a); }
Word W(const char* s, Alphabet a = one) { return Word::parse(s, a); }

oracle::Ep ep(const EpSequence& s) {
  return {{s.preperiod().begin(), s.preperiod().end()}, {s.period().begin(), s.period().end()}};
}

double mid(const RationalInterval& x) { return Rational((x.lo + x.hi) / 2).get_d(); }
double mid(const EntropyEnclosure& h) { return mid(h.interval()); }

std::vector<FundamentalWord> fundamentals(int M, std::size_t max_len) {
  std::vector<FundamentalWord> out;
  for (const auto& d : oracle::fundamental_words(M, max_len)) out.emplace_back(Word(Alphabet(M), d));
  return out;
}

const double log_two = std::log(2.0);
const double log_golden = std::log((1 + std::sqrt(5.0)) / 2);

}  // namespace

TEST_CASE("automaton examples") {
  const SubshiftAutomaton full(S("(1)"));
  CHECK(count_words(full, 10) == 1024);
  CHECK(count_words(full, 0) == 1);
  CHECK(essential_states(full).size() == 1);
  const SubshiftAutomaton fib(S("(110)"));
  CHECK(count_words(fib, 4) == 10);
  CHECK_FALSE(fib.accepts(W("0111")));
  CHECK_FALSE(fib.accepts(W("1000")));
  CHECK(fib.accepts(W("110011")));
  const SubshiftAutomaton alternating(S("(10)"));
  // Only the two alternating words survive at every length.
  for (std::size_t n = 1; n <= 12; ++n) CHECK(count_words(alternating, n) == 2);
  try {
    SubshiftAutomaton bad(S("(01)"));
    FAIL("expected NotAdmissible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAdmissible);
  }
  for (const char* a : {"(110)", "11(01)", "111(001)", "(110100)"}) {
    const EpSequence s = S(a);
    const std::size_t k = s.preperiod().size() + s.period().size();
    CHECK(SubshiftAutomaton(s).size() <= k * k);
  }
}

TEST_CASE("word counts agree with naive enumeration") {
  const std::vector<EpSequence> alphas{S("(1)"),        S("(110)"),        S("(10)"),
                                       S("1(10)"),      S("111(001)"),     S("(1110)"),
                                       S("(2)", two),   S("2(1)", two),    S("21(02)", two),
                                       S("(21)", two),  S("22(0)", two)};
  int purely = 0, eventually = 0;
  for (const auto& a : alphas) {
    if (!is_quasi_greedy_admissible(a) || !is_admissible_v(a)) continue;
    const SubshiftAutomaton aut(a);
    (a.is_purely_periodic() ? purely : eventually)++;
    const int M = a.alphabet().M();
    for (std::size_t n = 1; n <= 12; ++n) {
      REQUIRE_MESSAGE(count_words(aut, n) == static_cast<unsigned long>(oracle::count_lexicographic(ep(a), M, n)),
                      a.str() << " n=" << n);
    }
  }
  CHECK(purely >= 3);
  CHECK(eventually >= 2);
}

TEST_CASE("entropy examples") {
  const EntropyEnclosure full = entropy(SubshiftAutomaton(S("(1)")));
  CHECK(full.contains(log_bound(Rational(2), Rounding::Down)));
  CHECK(full.exact_radius == Rational(2));
  const EntropyEnclosure fib = entropy(SubshiftAutomaton(S("(110)")));
  CHECK(fib.hi - fib.lo <= default_entropy_tolerance());
  CHECK(mid(fib) == doctest::Approx(log_golden).epsilon(1e-10));
  CHECK(mid(entropy(SubshiftAutomaton(S("1(10)")))) == doctest::Approx(log_two / 2).epsilon(1e-10));
  const EntropyEnclosure zero = entropy(SubshiftAutomaton(S("(10)")));
  CHECK(zero.lo == 0);
  CHECK(zero.hi == 0);
  CHECK(mid(entropy(SubshiftAutomaton(S("(2)", two)))) == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("entropy matches the window shift spectral radius") {
  for (int M = 1; M <= 2; ++M) {
    for (const auto& a : fundamentals(M, M == 1 ? 8 : 4)) {
      if (decompose(a).size() != 1) continue;
      const auto d = std::vector<int>(a.word().digits().begin(), a.word().digits().end());
      const double expected = std::log(static_cast<double>(oracle::window_radius(d, M)));
      CHECK_MESSAGE(mid(entropy(SubshiftAutomaton(EpSequence::periodic(a.word())))) ==
                        doctest::Approx(expected).epsilon(1e-7),
                    a.str());
    }
  }
}

TEST_CASE("counts bound the entropy from above") {
  for (const char* a : {"(110)", "1(10)", "(11010)", "(110100)", "111(001)"}) {
    const SubshiftAutomaton aut(S(a));
    const EntropyEnclosure h = entropy(aut);
    for (std::size_t n : {1u, 5u, 20u, 60u}) {
      CHECK(log_bound(Rational(count_words(aut, n)), Rounding::Up) / static_cast<long>(n) >= h.lo);
    }
  }
}

TEST_CASE("entropy is equal at both endpoints of an irreducible interval") {
  for (int M = 1; M <= 2; ++M) {
    // [q_G, q_T] is not a plateau: H jumps from 0 to c_M log 2 across it.
    const FundamentalWord u = unit_lift(Alphabet(M));
    for (const auto& a : fundamentals(M, M == 1 ? 8 : 4)) {
      if (decompose(a).size() != 1 || a == u) continue;
      const Rational tol = default_entropy_tolerance();
      const EntropyEnclosure left = entropy(SubshiftAutomaton(EpSequence::periodic(a.word())), tol);
      const EntropyEnclosure right =
          entropy(SubshiftAutomaton(EpSequence(increment_last(a.word()), reflect(a.word()))), tol);
      CHECK_MESSAGE(left.interval().overlaps(right.interval(), 2 * tol), a.str());
    }
  }
}

TEST_CASE("transitivity") {
  CHECK(is_transitive(SubshiftAutomaton(S("(1)"))));
  CHECK(is_transitive(SubshiftAutomaton(S("(110)"))));
  const SubshiftAutomaton reducible(S("(110100)"));
  CHECK_FALSE(is_transitive(reducible));
  CHECK(essential_components(reducible).size() == 2);
  for (int M = 1; M <= 2; ++M) {
    const FundamentalWord u = unit_lift(Alphabet(M));
    for (const auto& a : fundamentals(M, M == 1 ? 8 : 4)) {
      const auto d = std::vector<int>(a.word().digits().begin(), a.word().digits().end());
      const bool transitive = is_transitive(SubshiftAutomaton(EpSequence::periodic(a.word())));
      CHECK_MESSAGE(transitive == oracle::window_transitive(d, M), a.str());
      if (decompose(a).size() == 1 && a != u) CHECK_MESSAGE(transitive, a.str());
    }
  }
}

TEST_CASE("connecting words") {
  const SubshiftAutomaton fib(S("(110)"));
  const Word w = connect_words(fib, W("110"), W("001"));
  CHECK_FALSE(w.empty());
  CHECK(fib.accepts(W("110") + w + W("001")));
  CHECK(connect_words(fib, W("1"), W("1")).empty());
  try {
    connect_words(fib, W("110"), W("111"));
    FAIL("expected NotInLanguage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInLanguage);
  }
  for (const auto& a : fundamentals(1, 7)) {
    const SubshiftAutomaton aut(EpSequence::periodic(a.word()));
    if (!is_transitive(aut)) continue;
    for (const auto& u : oracle::all_words(1, 4)) {
      for (const auto& v : oracle::all_words(1, 3)) {
        const Word wu(one, u), wv(one, v);
        if (!aut.accepts(wu) || !aut.accepts(wv)) continue;
        // Words reaching only transient states may have no continuation at all.
        try {
          const Word x = connect_words(aut, wu, wv);
          CHECK(aut.accepts(wu + x + wv));
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::NoConnection);
        }
      }
    }
  }
  // In the reducible example some pairs of factors cannot be joined.
  const SubshiftAutomaton reducible(S("(110100)"));
  int disconnected = 0;
  for (const auto& u : oracle::all_words(1, 6)) {
    for (const auto& v : oracle::all_words(1, 6)) {
      const Word wu(one, u), wv(one, v);
      if (!reducible.accepts(wu) || !reducible.accepts(wv)) continue;
      try {
        const Word x = connect_words(reducible, wu, wv);
        CHECK(reducible.accepts(wu + x + wv));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoConnection);
        ++disconnected;
      }
    }
  }
  CHECK(disconnected > 0);
}

TEST_CASE("prefix lengths with fundamental decrements at most double") {
  for (const auto& a : fundamentals(1, 8)) {
    if (decompose(a).size() != 1 || a == unit_lift(one)) continue;
    const EpSequence alpha = EpSequence::periodic(a.word());
    std::vector<std::size_t> m;
    for (std::size_t j = 1; j <= 8 * a.size(); ++j) {
      const Word prefix = alpha.prefix(j);
      if (prefix.back() > 0 && is_fundamental(decrement_last(prefix))) m.push_back(j);
    }
    REQUIRE(!m.empty());
    for (std::size_t j = 0; j + 1 < m.size(); ++j) CHECK_MESSAGE(m[j + 1] <= 2 * m[j], a.str());
  }
}

TEST_CASE("entropy bounds at a base") {
  const EntropyEnclosure top = entropy_bounds_at(BaseEnclosure::exact(one, Rational(2)), 10);
  CHECK(top.contains(log_bound(Rational(2), Rounding::Down)));
  CHECK(top.hi - top.lo < pow2_neg(100));
  CHECK(entropy_bounds_at(transitive_base(one), 20).contains(log_bound(Rational(2), Rounding::Down) / 2));
  const BaseEnclosure inside(one, Rational(185, 100), Rational(185, 100) + pow2_neg(100));
  for (std::size_t n : {8u, 20u, 40u}) {
    const EntropyEnclosure h = entropy_bounds_at(inside, n);
    CHECK(Rational(h.lo).get_d() <= log_golden + 1e-12);
    CHECK(Rational(h.hi).get_d() >= log_golden - 1e-12);
  }
  // Upper bounds shrink toward zero below q_KL.
  const BaseEnclosure low(one, Rational(17, 10), Rational(17, 10) + pow2_neg(100));
  CHECK(entropy_bounds_at(low, 40).hi < entropy_bounds_at(low, 10).hi);
  CHECK(entropy_bounds_at(low, 10).lo == 0);
}

TEST_CASE("Hausdorff dimension") {
  const BaseEnclosure q2 = BaseEnclosure::exact(one, Rational(2));
  const RationalInterval d2 = hausdorff_dimension(q2, entropy_bounds_at(q2, 10));
  CHECK(d2.lo == 1);
  CHECK(d2.hi == 1);
  const BaseEnclosure q3 = BaseEnclosure::exact(two, Rational(3));
  const RationalInterval d3 = hausdorff_dimension(q3, entropy_bounds_at(q3, 10));
  CHECK(d3.lo == 1);
  CHECK(d3.hi == 1);
  const BaseEnclosure t = transitive_base(one);
  const RationalInterval dt = hausdorff_dimension(t, entropy_bounds_at(t, 20));
  const double expected = log_two / (2 * std::log(Rational((t.lo() + t.hi()) / 2).get_d()));
  CHECK(Rational(dt.lo).get_d() <= expected + 1e-12);
  CHECK(Rational(dt.hi).get_d() >= expected - 1e-12);
  CHECK(mid(dt) == doctest::Approx(0.5885474589).epsilon(1e-9));
}
