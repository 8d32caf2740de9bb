#include "qexp/subshift.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace qexp {

SubshiftAutomaton::SubshiftAutomaton(const EpSequence& alpha) : alpha_(alpha) {
  if (!is_quasi_greedy_admissible(alpha) || !is_admissible_v(alpha)) {
    throw Error(ErrorCode::NotAdmissible, alpha.str() + " is not a quasi-greedy expansion in V");
  }
  const EpSequence bar = reflect(alpha);
  const std::size_t p = alpha.preperiod().size();
  const std::size_t m = alpha.period().size();
  const int M = alpha.alphabet().M();
  // Beyond the preperiod, alpha repeats with period m, so match lengths can be
  // folded back without changing any future comparison.
  auto fold = [p, m](std::size_t i) { return i >= p + m ? i - m : i; };

  std::map<std::pair<std::size_t, std::size_t>, int> index;
  auto intern = [&](std::pair<std::size_t, std::size_t> s) {
    auto [it, fresh] = index.try_emplace(s, static_cast<int>(states_.size()));
    if (fresh) {
      states_.push_back(s);
      next_.emplace_back(M + 1, kNone);
    }
    return it->second;
  };
  intern({0, 0});
  for (std::size_t s = 0; s < states_.size(); ++s) {
    const auto [i, j] = states_[s];
    const Digit top = alpha.at(i);
    const Digit bottom = bar.at(j);
    for (Digit d = bottom; d <= top; ++d) {
      const std::size_t i2 = d == top ? fold(i + 1) : 0;
      const std::size_t j2 = d == bottom ? fold(j + 1) : 0;
      const int t = intern({i2, j2});
      next_[s][d] = t;
    }
  }
}

int SubshiftAutomaton::run(int s, const Word& w) const {
  if (w.alphabet() != alphabet()) throw Error(ErrorCode::InvalidArgument, "alphabet mismatch");
  for (Digit d : w.digits()) {
    if (s == kNone) return kNone;
    s = next_[s][d];
  }
  return s;
}

Integer count_words(const SubshiftAutomaton& aut, std::size_t n) {
  std::vector<Integer> v(aut.size());
  v[aut.start()] = 1;
  const int M = aut.alphabet().M();
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Integer> w(aut.size());
    for (std::size_t s = 0; s < aut.size(); ++s) {
      if (v[s] == 0) continue;
      for (Digit d = 0; d <= M; ++d) {
        const int t = aut.next(static_cast<int>(s), d);
        if (t != SubshiftAutomaton::kNone) w[t] += v[s];
      }
    }
    v = std::move(w);
  }
  Integer total(0);
  for (const auto& x : v) total += x;
  return total;
}

Rational default_entropy_tolerance() { return pow2_neg(40); }

namespace {

using Graph = std::vector<std::vector<int>>;

Graph successor_graph(const SubshiftAutomaton& aut) {
  Graph g(aut.size());
  for (std::size_t s = 0; s < aut.size(); ++s) {
    for (Digit d = 0; d <= aut.alphabet().M(); ++d) {
      const int t = aut.next(static_cast<int>(s), d);
      if (t != SubshiftAutomaton::kNone) g[s].push_back(t);
    }
  }
  return g;
}

std::vector<bool> essential_mask(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<bool> alive(n, true);
  std::vector<int> in(n, 0), out(n, 0);
  Graph rev(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (int t : g[s]) {
      ++out[s];
      ++in[t];
      rev[t].push_back(static_cast<int>(s));
    }
  }
  std::deque<int> dead;
  for (std::size_t s = 0; s < n; ++s) {
    if (in[s] == 0 || out[s] == 0) dead.push_back(static_cast<int>(s));
  }
  while (!dead.empty()) {
    const int s = dead.front();
    dead.pop_front();
    if (!alive[s]) continue;
    alive[s] = false;
    for (int t : g[s]) {
      if (alive[t] && --in[t] == 0) dead.push_back(t);
    }
    for (int t : rev[s]) {
      if (alive[t] && --out[t] == 0) dead.push_back(t);
    }
  }
  return alive;
}

// Kosaraju, iterative; only states in `keep` take part.
std::vector<std::vector<int>> components(const Graph& g, const std::vector<bool>& keep) {
  const std::size_t n = g.size();
  Graph rev(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!keep[s]) continue;
    for (int t : g[s]) {
      if (keep[t]) rev[t].push_back(static_cast<int>(s));
    }
  }
  std::vector<int> order;
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (!keep[root] || seen[root]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(root), 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [s, k] = stack.back();
      if (k < g[s].size()) {
        const int t = g[s][k++];
        if (keep[t] && !seen[t]) {
          seen[t] = true;
          stack.emplace_back(t, 0);
        }
      } else {
        order.push_back(s);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != -1) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{*it};
    comp[*it] = id;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      out[id].push_back(s);
      for (int t : rev[s]) {
        if (comp[t] == -1) {
          comp[t] = id;
          stack.push_back(t);
        }
      }
    }
  }
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

struct RadiusBounds {
  Rational lo;
  Rational hi;
};

// Collatz-Wielandt bounds for the Perron root of one strongly connected
// component: min and max of (Bx)_i / x_i for B = A + I, which is primitive, so
// power iteration drives both towards rho(A) + 1.
RadiusBounds component_radius(const Graph& g, const std::vector<int>& comp, const Rational& tol) {
  constexpr std::size_t kKeepBits = 256;
  constexpr int kMaxRounds = 500000;
  const std::size_t n = comp.size();
  std::map<int, std::size_t> local;
  for (std::size_t k = 0; k < n; ++k) local[comp[k]] = k;
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (int t : g[comp[k]]) {
      if (auto it = local.find(t); it != local.end()) succ[k].push_back(it->second);
    }
  }
  std::vector<Integer> x(n, Integer(1));
  RadiusBounds best{Rational(0), Rational(-1)};
  for (int round = 0; round < kMaxRounds; ++round) {
    std::vector<Integer> y = x;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t t : succ[k]) y[t] += x[k];
    }
    // Row sums of B^T x give bounds for B as well: same spectrum.
    Rational lo, hi;
    for (std::size_t k = 0; k < n; ++k) {
      const Rational r(y[k], x[k]);
      if (k == 0 || r < lo) lo = r;
      if (k == 0 || r > hi) hi = r;
    }
    lo -= 1;
    hi -= 1;
    lo.canonicalize();
    hi.canonicalize();
    if (lo > best.lo) best.lo = lo;
    if (best.hi < 0 || hi < best.hi) best.hi = hi;
    if (best.hi - best.lo <= tol) break;
    std::size_t bits = 0;
    for (const auto& v : y) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
    if (bits > 2 * kKeepBits) {
      const auto drop = static_cast<mp_bitcnt_t>(bits - kKeepBits);
      for (auto& v : y) {
        mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), drop);
        if (v < 1) v = 1;
      }
    }
    x = std::move(y);
  }
  return best;
}

EntropyEnclosure enclosure_from_radius(const Rational& lo, const Rational& hi) {
  EntropyEnclosure h;
  if (lo == hi) h.exact_radius = lo;
  h.lo = lo <= 1 ? Rational(0) : log_bound(lo, Rounding::Down);
  h.hi = hi <= 1 ? Rational(0) : log_bound(hi, Rounding::Up);
  return h;
}

}  // namespace

std::vector<int> essential_states(const SubshiftAutomaton& aut) {
  const auto mask = essential_mask(successor_graph(aut));
  std::vector<int> out;
  for (std::size_t s = 0; s < mask.size(); ++s) {
    if (mask[s]) out.push_back(static_cast<int>(s));
  }
  return out;
}

std::vector<std::vector<int>> essential_components(const SubshiftAutomaton& aut) {
  const Graph g = successor_graph(aut);
  return components(g, essential_mask(g));
}

bool is_transitive(const SubshiftAutomaton& aut) { return essential_components(aut).size() == 1; }

EntropyEnclosure entropy(const SubshiftAutomaton& aut, const Rational& tol) {
  if (tol <= 0) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const Graph g = successor_graph(aut);
  const auto comps = components(g, essential_mask(g));
  if (comps.empty()) throw Error(ErrorCode::InternalInvariant, "automaton presents an empty subshift");
  Rational lo(0), hi(0);
  for (const auto& c : comps) {
    // Radius bounds within tol keep the log width below tol since rho >= 1.
    const RadiusBounds r = component_radius(g, c, tol / 2);
    if (r.lo > lo) lo = r.lo;
    if (r.hi > hi) hi = r.hi;
  }
  return enclosure_from_radius(lo, hi);
}

Word connect_words(const SubshiftAutomaton& aut, const Word& u, const Word& v) {
  const int from = aut.run(aut.start(), u);
  if (from == SubshiftAutomaton::kNone) throw Error(ErrorCode::NotInLanguage, "'" + u.str() + "' is not a factor");
  if (!aut.accepts(v)) throw Error(ErrorCode::NotInLanguage, "'" + v.str() + "' is not a factor");
  const int M = aut.alphabet().M();
  std::vector<std::pair<int, Digit>> parent(aut.size(), {SubshiftAutomaton::kNone, 0});
  std::vector<bool> seen(aut.size(), false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    if (aut.run(s, v) != SubshiftAutomaton::kNone) {
      std::vector<Digit> rev;
      for (int t = s; t != from; t = parent[t].first) rev.push_back(parent[t].second);
      Word w(aut.alphabet(), std::vector<Digit>(rev.rbegin(), rev.rend()));
      if (!aut.accepts(u + w + v)) throw Error(ErrorCode::InternalInvariant, "connecting word failed to verify");
      return w;
    }
    for (Digit d = 0; d <= M; ++d) {
      const int t = aut.next(s, d);
      if (t != SubshiftAutomaton::kNone && !seen[t]) {
        seen[t] = true;
        parent[t] = {s, d};
        queue.push_back(t);
      }
    }
  }
  throw Error(ErrorCode::NoConnection, "no word connects '" + u.str() + "' to '" + v.str() + "'");
}

namespace {

// Number of words of length n all of whose factors lie between the matching
// prefixes of reflect(alpha) and alpha, using only alpha_1 .. alpha_n.
Integer count_locally_admissible(const Word& prefix) {
  const std::size_t n = prefix.size();
  const int M = prefix.alphabet().M();
  std::map<std::pair<std::size_t, std::size_t>, Integer> layer{{{0, 0}, Integer(1)}};
  for (std::size_t step = 0; step < n; ++step) {
    std::map<std::pair<std::size_t, std::size_t>, Integer> nxt;
    for (const auto& [st, count] : layer) {
      const auto [i, j] = st;
      const Digit top = prefix[i];
      const Digit bottom = M - prefix[j];
      for (Digit d = bottom; d <= top; ++d) {
        nxt[{d == top ? i + 1 : 0, d == bottom ? j + 1 : 0}] += count;
      }
    }
    layer = std::move(nxt);
  }
  Integer total(0);
  for (const auto& [st, count] : layer) total += count;
  return total;
}

}  // namespace

EntropyEnclosure entropy_bounds_at(const BaseEnclosure& q, std::size_t n, const Rational& tol) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "entropy_bounds_at needs n >= 1");
  const Alphabet alphabet = q.alphabet();
  const Rational top(alphabet.M() + 1);
  if (q.lo() == top) return enclosure_from_radius(top, top);

  const Word prefix = alpha_digits(q, n);
  EntropyEnclosure out;
  out.hi = log_bound(Rational(count_locally_admissible(prefix)), Rounding::Up) / static_cast<long>(n);
  out.lo = 0;

  if (const auto& alpha = q.defining_alpha(); alpha && is_admissible_v(*alpha)) {
    const EntropyEnclosure exact = entropy(SubshiftAutomaton(*alpha), tol);
    out.lo = exact.lo;
    if (exact.hi < out.hi) out.hi = exact.hi;
    out.exact_radius = exact.exact_radius;
    return out;
  }
  // Every base in the enclosure has alpha starting with `prefix`, so
  // (a_1 .. a_k^-)^inf belongs to a strictly smaller base with smaller V.
  for (std::size_t k = n; k >= 1; --k) {
    if (prefix[k - 1] == 0) continue;
    const EpSequence s = EpSequence::periodic(decrement_last(prefix.substr(0, k)));
    if (!is_quasi_greedy_admissible(s) || !is_admissible_v(s)) continue;
    out.lo = entropy(SubshiftAutomaton(s), tol).lo;
    break;
  }
  return out;
}

RationalInterval hausdorff_dimension(const BaseEnclosure& q, const EntropyEnclosure& h) {
  if (h.exact_radius && q.is_point() && *h.exact_radius == q.lo()) return {1, 1};
  const Rational log_hi = log_bound(q.hi(), Rounding::Up);
  const Rational log_lo = log_bound(q.lo(), Rounding::Down);
  if (log_lo <= 0) throw Error(ErrorCode::InvalidArgument, "base enclosure too close to 1");
  Rational lo = h.lo / log_hi;
  Rational hi = h.hi / log_lo;
  return {lo, hi};
}

}  // namespace qexp
