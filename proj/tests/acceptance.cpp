// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qexp/plateaus.hpp"

using namespace qexp;

namespace {

const Alphabet one(1);
const Alphabet two(2);

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double to_double(const Rational& x) { return x.get_d(); }
double mid(const RationalInterval& x) { return to_double(Rational((x.lo + x.hi) / 2)); }

FundamentalWord F(const char* s, Alphabet a = one) { return FundamentalWord::parse(s, a); }

oracle::Digits digits_of(const Word& w) { return {w.digits().begin(), w.digits().end()}; }

std::vector<FundamentalWord> words_upto(Alphabet a, std::size_t len) {
  std::vector<FundamentalWord> out;
  for (const auto& d : oracle::fundamental_words(a.M(), len)) out.emplace_back(Word(a, d));
  return out;
}

Outcome composition_examples() {
  struct Case {
    const char* a;
    const char* b;
    int M;
    const char* expected;
  };
  int bad = 0;
  double slowest = 0;
  for (const Case& c : {Case{"10", "110", 1, "110100"}, Case{"110", "10", 1, "111000"}, Case{"1", "1110", 2, "2110"}}) {
    const auto t0 = Clock::now();
    const std::string got = compose(F(c.a, Alphabet(c.M)), F(c.b)).str();
    slowest = std::max(slowest, seconds_since(t0));
    if (got != c.expected) ++bad;
  }
  std::ostringstream s;
  s << "3 examples, " << bad << " mismatches, slowest " << slowest * 1e3 << " ms";
  return {bad == 0 && slowest < 1e-3, s.str()};
}

Outcome semigroup_laws() {
  const auto t0 = Clock::now();
  const auto words = words_upto(one, 5);
  long pairs = 0, triples = 0, violations = 0;
  auto closed = [&](const FundamentalWord& a, const FundamentalWord& b) -> std::optional<FundamentalWord> {
    try {
      FundamentalWord c = compose(a, b);
      if (!oracle::is_fundamental(digits_of(c.word()), 1)) return std::nullopt;
      return c;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  auto associative = [&](const FundamentalWord& a, const FundamentalWord& b, const FundamentalWord& c) {
    ++triples;
    const auto ab = closed(a, b), bc = closed(b, c);
    if (!ab || !bc) return false;
    const auto left = closed(*ab, c), right = closed(a, *bc);
    return left && right && *left == *right;
  };
  for (const auto& a : words) {
    for (const auto& b : words) {
      ++pairs;
      if (!closed(a, b)) ++violations;
      for (const auto& c : words) violations += associative(a, b, c) ? 0 : 1;
    }
  }
  const auto pool = words_upto(one, 7);
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    const auto& c = pool[rng() % pool.size()];
    violations += associative(a, b, c) ? 0 : 1;
  }
  const double t = seconds_since(t0);
  std::ostringstream s;
  s << pairs << " pairs, " << triples << " triples, " << violations << " violations, " << t << " s";
  return {violations == 0 && triples >= 1000 && t < 60, s.str()};
}

Outcome thue_morse_functoriality() {
  int checked = 0, bad = 0;
  auto tau = [](std::size_t n) {
    oracle::Digits d;
    for (std::size_t i = 1; i <= n; ++i) d.push_back(oracle::thue_morse(i));
    return d;
  };
  for (int M = 1; M <= 4; ++M) {
    const Alphabet a(M);
    for (std::size_t k = 1; k <= 12; ++k) {
      const std::size_t n = std::size_t{1} << k;
      oracle::Digits lambda;
      for (std::size_t i = 1; i <= n; ++i) lambda.push_back(oracle::lambda(i, M));
      const Word image = phi(unit_lift(a), Word(a, lambda));
      ++checked;
      if (digits_of(image) != tau(M % 2 == 0 ? n : n / 2)) ++bad;
    }
  }
  std::ostringstream s;
  s << checked << " cases (M=1..4, k<=12), " << bad << " mismatches";
  return {bad == 0, s.str()};
}

Outcome ladder_entropies() {
  const auto t0 = Clock::now();
  double worst = 0;
  for (int M = 1; M <= 3; ++M) {
    const double c = to_double(bridge_factor(Alphabet(M)));
    for (unsigned n = 1; n <= 5; ++n) {
      const EntropyEnclosure h = entropy(SubshiftAutomaton(prime_alpha(Alphabet(M), n)));
      const double target = c * std::log(2.0) / std::pow(2.0, n - 1);
      worst = std::max({worst, std::fabs(to_double(h.lo) - target), std::fabs(to_double(h.hi) - target)});
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream s;
  s << "max |H(q'_n) - c_M log2/2^(n-1)| = " << worst << " (tol 1e-8), " << t << " s";
  return {worst < 1e-8 && t < 60, s.str()};
}

Outcome plateau_flatness() {
  const Rational slack(1, 50000000);  // 2e-8
  int checked = 0, bad = 0, separated = 0, unseparated = 0;
  for (auto [M, len] : {std::pair{1, 6u}, std::pair{2, 4u}}) {
    const Alphabet a(M);
    const FundamentalWord u = unit_lift(a);
    std::vector<EntropyEnclosure> levels;
    for (const auto& w : enumerate_fundamental(a, len)) {
      if (decompose(w).size() != 1 || w == u) continue;
      const EntropyEnclosure left = entropy(SubshiftAutomaton(EpSequence::periodic(w.word())));
      const EntropyEnclosure right = entropy(SubshiftAutomaton(EpSequence(increment_last(w.word()), reflect(w.word()))));
      ++checked;
      if (!left.interval().overlaps(right.interval(), slack)) ++bad;
      levels.push_back(left);
    }
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      (levels[i].hi < levels[i + 1].lo ? separated : unseparated)++;
    }
  }
  std::ostringstream s;
  s << checked << " irreducible words, " << bad << " endpoint mismatches, " << separated << " separated / "
    << unseparated << " overlapping consecutive levels";
  return {bad == 0 && unseparated == 0 && checked > 0, s.str()};
}

Outcome transitivity() {
  int checked = 0, bad = 0, witnesses = 0, broken = 0;
  for (const auto& w : enumerate_fundamental(one, 8)) {
    if (decompose(w).size() != 1) continue;
    const SubshiftAutomaton aut(EpSequence::periodic(w.word()));
    ++checked;
    if (!is_transitive(aut)) {
      ++bad;
      continue;
    }
    for (const auto& x : oracle::all_words(1, 4)) {
      for (const auto& y : oracle::all_words(1, 4)) {
        const Word u(one, x), v(one, y);
        if (!aut.accepts(u) || !aut.accepts(v)) continue;
        try {
          const Word c = connect_words(aut, u, v);
          ++witnesses;
          if (!aut.accepts(u + c + v)) ++broken;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoConnection) ++broken;
        }
      }
    }
  }
  std::ostringstream s;
  s << checked << " irreducible words, " << bad << " non-transitive, " << witnesses << " witnesses, " << broken
    << " failed re-verification";
  return {bad == 0 && broken == 0 && checked > 0, s.str()};
}

Outcome decomposition() {
  int checked = 0, bad = 0;
  for (const auto& w : words_upto(one, 10)) {
    ++checked;
    const Decomposition d = decompose(w);
    if (!(d.recompose() == w) || decompose(d.head).size() != 1) ++bad;
    for (const auto& t : d.tail) bad += decompose(t).size() == 1 ? 0 : 1;
  }
  int records = 0, uncertified = 0;
  for (const auto& r : enumerate_plateaus(one, 10)) {
    ++records;
    if (!r.placement_certified) ++uncertified;
  }
  std::ostringstream s;
  s << checked << " words, " << bad << " decomposition failures, " << records << " records, " << uncertified
    << " uncertified placements";
  return {bad == 0 && uncertified == 0, s.str()};
}

Outcome counting_oracle() {
  const std::vector<EpSequence> alphas{EpSequence::parse("(1)", one),      EpSequence::parse("(110)", one),
                                       EpSequence::parse("1(10)", one),    EpSequence::parse("111(001)", one),
                                       EpSequence::parse("(2)", two),      EpSequence::parse("21(02)", two),
                                       EpSequence::parse("(21)", two)};
  int automata = 0, purely = 0, mismatches = 0;
  for (const auto& a : alphas) {
    const SubshiftAutomaton aut(a);
    ++automata;
    purely += a.is_purely_periodic() ? 1 : 0;
    const oracle::Ep e{{a.preperiod().begin(), a.preperiod().end()}, {a.period().begin(), a.period().end()}};
    for (std::size_t n = 1; n <= 12; ++n) {
      if (count_words(aut, n) != static_cast<unsigned long>(oracle::count_lexicographic(e, a.alphabet().M(), n))) {
        ++mismatches;
      }
    }
  }
  std::ostringstream s;
  s << automata << " automata (" << purely << " purely periodic), n<=12, " << mismatches << " mismatches";
  return {mismatches == 0 && automata >= 5 && purely > 0 && purely < automata, s.str()};
}

Outcome numerics() {
  const BaseEnclosure g = base_from_alpha(EpSequence::parse("(10)", one));
  auto f = [](const Rational& x) -> Rational { return x * x - x - 1; };
  const bool golden = f(g.lo()) <= 0 && f(g.hi()) >= 0 && g.width() < Rational(1, 1000000000000);

  const BaseEnclosure kl = komornik_loreti_base(one);
  const oracle::Bracket b = oracle::tail_bounded_root([](std::size_t i) { return oracle::lambda(i + 1, 1); }, 1, 400);
  const double gap = std::max(std::fabs(static_cast<double>(b.lo) - to_double(kl.lo())),
                              std::fabs(static_cast<double>(b.hi) - to_double(kl.hi())));
  const bool kl_ok = gap < 1e-10;

  const BaseEnclosure q2 = BaseEnclosure::exact(one, Rational(2));
  const RationalInterval dim = hausdorff_dimension(q2, entropy_bounds_at(q2, 10));
  const bool dim_ok = dim.lo == 1 && dim.hi == 1;
  std::ostringstream s;
  s << "q_G width " << to_double(g.width()) << (golden ? " encloses" : " MISSES") << " (1+sqrt5)/2; q_KL vs series "
    << gap << "; dim U_2 = [" << to_string(dim.lo) << ", " << to_string(dim.hi) << "]";
  return {golden && kl_ok && dim_ok, s.str()};
}

Outcome entropy_bridge() {
  const Rational slack(1, 1000000);
  int endpoints = 0, disagree = 0;
  for (int M = 1; M <= 2; ++M) {
    const Alphabet a(M);
    const FundamentalWord u = unit_lift(a);
    const BaseEnclosure qg = golden_base(a), qt = transitive_base(a);
    for (const auto& b : enumerate_fundamental(one, 5)) {
      const auto [l, r] = fundamental_interval(compose(u, b));
      for (const BaseEnclosure& q : {l, r}) {
        if (compare_bases(qg, q) != std::partial_ordering::less) continue;
        if (compare_bases(q, qt) == std::partial_ordering::greater) continue;
        const BridgeReport report = verify_entropy_bridge(u, q);
        ++endpoints;
        if (!report.direct.interval().overlaps(report.scaled, slack)) ++disagree;
      }
    }
  }
  std::ostringstream s;
  s << endpoints << " endpoints in (q_G, q_T], M in {1,2}, " << disagree << " disagreements (tol 1e-6)";
  return {endpoints >= 10 && disagree == 0, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"composition examples", composition_examples},
      {"semigroup laws", semigroup_laws},
      {"Thue-Morse functoriality", thue_morse_functoriality},
      {"ladder entropies", ladder_entropies},
      {"plateau flatness and growth", plateau_flatness},
      {"transitivity", transitivity},
      {"decomposition and placement", decomposition},
      {"counting oracle", counting_oracle},
      {"numerics", numerics},
      {"entropy bridge", entropy_bridge},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
