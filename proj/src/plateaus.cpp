#include "qexp/plateaus.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

namespace qexp {

namespace {

// A prefix can only extend to a fundamental word if each of its suffixes lies
// (weakly) between the reflected prefix and the prefix of the same length.
bool viable_prefix(const std::vector<Digit>& x, int M) {
  const std::size_t k = x.size();
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = 0; i + j < k; ++j) {
      if (x[i + j] != x[j]) {
        if (x[i + j] > x[j]) return false;
        break;
      }
    }
    for (std::size_t j = 0; i + j < k; ++j) {
      if (x[i + j] != M - x[j]) {
        if (x[i + j] < M - x[j]) return false;
        break;
      }
    }
  }
  return true;
}

void extend(Alphabet alphabet, std::size_t max_len, std::vector<Digit>& x, std::vector<FundamentalWord>& out) {
  if (!x.empty()) {
    if (auto w = FundamentalWord::try_make(Word(alphabet, x))) out.push_back(*w);
  }
  if (x.size() == max_len) return;
  for (Digit d = 0; d <= alphabet.M(); ++d) {
    x.push_back(d);
    if (viable_prefix(x, alphabet.M())) extend(alphabet, max_len, x, out);
    x.pop_back();
  }
}

template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::optional<T>> slots(count);
  std::vector<std::future<void>> workers;
  std::atomic<std::size_t> next{0};
  for (unsigned t = 0; t < threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < count; i = next++) slots[i].emplace(f(i));
    }));
  }
  for (auto& w : workers) w.get();
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

bool certified_less(const BaseEnclosure& x, const BaseEnclosure& y) {
  return compare_bases(x, y) == std::partial_ordering::less;
}

bool certified_at_most(const BaseEnclosure& x, const BaseEnclosure& y) {
  const auto c = compare_bases(x, y);
  return c == std::partial_ordering::less || c == std::partial_ordering::equivalent;
}

}  // namespace

std::vector<FundamentalWord> enumerate_fundamental(Alphabet alphabet, std::size_t max_len) {
  if (max_len == 0) throw Error(ErrorCode::InvalidArgument, "max_len must be at least 1");
  std::vector<FundamentalWord> out;
  std::vector<Digit> x;
  extend(alphabet, max_len, x, out);
  std::sort(out.begin(), out.end(), [](const FundamentalWord& a, const FundamentalWord& b) {
    const auto c = lex_compare(EpSequence::periodic(a.word()), EpSequence::periodic(b.word()));
    return c != 0 ? c < 0 : a.size() < b.size();
  });
  return out;
}

std::vector<LadderRung> ladder(Alphabet alphabet, unsigned n_max, const Rational& tol) {
  if (n_max == 0) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  std::vector<BaseEnclosure> primes;
  primes.push_back(BaseEnclosure::exact(alphabet, Rational(alphabet.M() + 1)));
  for (unsigned n = 1; n <= n_max + 1; ++n) primes.push_back(prime_base(alphabet, n, tol));
  std::vector<LadderRung> out;
  for (unsigned n = 0; n <= n_max; ++n) out.push_back({n, primes[n + 1], primes[n]});
  return out;
}

std::vector<PlateauRecord> enumerate_plateaus(Alphabet alphabet, std::size_t max_len, const PlateauOptions& options) {
  using K = Classification::Kind;
  struct Candidate {
    FundamentalWord word;
    Classification kind;
  };
  std::vector<Candidate> candidates;
  for (auto& w : enumerate_fundamental(alphabet, max_len)) {
    const Classification c = classify(w);
    if (c.kind != K::Reducible) candidates.push_back({std::move(w), c});
  }
  unsigned deepest = 1;
  for (const auto& c : candidates) deepest = std::max(deepest, c.kind.n + 1);
  const auto rungs = ladder(alphabet, deepest, options.tol);
  const FundamentalWord u = unit_lift(alphabet);
  const Word ten(Alphabet(1), {1, 0});
  auto prime = [&](unsigned n) -> const BaseEnclosure& { return n == 0 ? rungs[0].upper : rungs[n - 1].lower; };

  auto build = [&](std::size_t i) {
    const Candidate& c = candidates[i];
    auto [ql, qr] = fundamental_interval(c.word, options.tol);
    PlateauRecord r{c.word, ql, qr, {}, {}, c.kind, std::nullopt, true, false};
    r.entropy = entropy(SubshiftAutomaton(*ql.defining_alpha()), options.entropy_tol);
    r.entropy_right = entropy(SubshiftAutomaton(*qr.defining_alpha()), options.entropy_tol);
    if (c.kind.kind == K::Irreducible) {
      if (c.word == u) {
        // [q_G, q_T] reaches below q_KL.
        r.is_plateau = false;
        r.placement_certified = certified_at_most(qr, prime(1)) && certified_at_most(prime(1), qr);
      } else {
        r.ladder_index = 0;
        r.placement_certified = certified_less(prime(1), ql);
      }
    } else {
      // u o 10^(n-1) o 10 ends exactly at q'_{n+1} and, like [q_G, q_T],
      // straddles q_KL: listed, but neither a plateau nor inside a rung.
      const unsigned n = c.kind.n;
      if (decompose(c.word).tail.back().word() == ten) {
        r.is_plateau = false;
        r.placement_certified = certified_at_most(qr, prime(n + 1)) && certified_at_most(prime(n + 1), qr);
      } else {
        r.ladder_index = n;
        r.placement_certified = certified_less(prime(n + 1), ql) && certified_at_most(qr, prime(n));
      }
    }
    return r;
  };

  std::vector<PlateauRecord> records = parallel_map<PlateauRecord>(candidates.size(), options.threads, build);
  if (options.region) {
    const RationalInterval& reg = *options.region;
    std::erase_if(records, [&](const PlateauRecord& r) { return r.q_right.hi() < reg.lo || r.q_left.lo() > reg.hi; });
  }
  return records;
}

Rational bridge_factor(Alphabet alphabet) { return alphabet.M() % 2 == 0 ? Rational(1) : Rational(1, 2); }

BridgeReport verify_entropy_bridge(const FundamentalWord& u, const BaseEnclosure& q, const Rational& tol) {
  if (!q.defining_alpha()) {
    throw Error(ErrorCode::InvalidArgument, "the entropy bridge is checked at bases with an eventually periodic alpha");
  }
  BaseEnclosure q_hat = phi_hat(u, q);
  EntropyEnclosure direct = entropy(SubshiftAutomaton(*q.defining_alpha()), tol);
  EntropyEnclosure image = entropy(SubshiftAutomaton(*q_hat.defining_alpha()), tol);
  const Rational c = bridge_factor(q.alphabet());
  RationalInterval scaled{c * image.lo, c * image.hi};
  const bool agree = direct.interval().overlaps(scaled, tol);
  return {q, std::move(q_hat), std::move(direct), std::move(image), std::move(scaled), agree};
}

std::string to_string(StaircaseRow::Status s) {
  switch (s) {
    case StaircaseRow::Status::Ok:
      return "ok";
    case StaircaseRow::Status::Precision:
      return "precision";
    case StaircaseRow::Status::Nonmonotone:
      return "nonmonotone";
  }
  return "?";
}

std::vector<StaircaseRow> staircase(Alphabet alphabet, std::vector<BaseEnclosure> grid, std::size_t depth,
                                    const std::vector<PlateauRecord>& plateaus, const Rational& entropy_tol) {
  for (const auto& q : grid) {
    if (q.alphabet() != alphabet) throw Error(ErrorCode::InvalidArgument, "grid alphabet mismatch");
  }
  std::stable_sort(grid.begin(), grid.end(), [](const BaseEnclosure& a, const BaseEnclosure& b) {
    return a.lo() != b.lo() ? a.lo() < b.lo() : a.hi() < b.hi();
  });
  std::vector<StaircaseRow> rows = parallel_map<StaircaseRow>(grid.size(), 0, [&](std::size_t i) {
    const BaseEnclosure& q = grid[i];
    StaircaseRow row{q, std::nullopt, std::nullopt, StaircaseRow::Status::Ok};
    try {
      EntropyEnclosure h = entropy_bounds_at(q, depth, entropy_tol);
      // H is nondecreasing, so any plateau starting at or below q bounds H(q) from below.
      for (const auto& p : plateaus) {
        if (p.q_left.hi() <= q.lo() && p.entropy.lo > h.lo) h.lo = p.entropy.lo;
      }
      if (h.lo > h.hi) row.status = StaircaseRow::Status::Nonmonotone;
      row.dim = hausdorff_dimension(q, h);
      row.h = std::move(h);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted) throw;
      row.status = StaircaseRow::Status::Precision;
    }
    return row;
  });
  // A later upper bound below an earlier lower bound would contradict monotonicity of H.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].h) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (rows[j].h && rows[j].q.hi() <= rows[i].q.lo() && rows[i].h->hi < rows[j].h->lo) {
        rows[i].status = StaircaseRow::Status::Nonmonotone;
      }
    }
  }
  return rows;
}

}  // namespace qexp
