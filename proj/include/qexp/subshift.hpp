#pragma once

// Finite automata presenting the lexicographic subshift V_q for eventually
// periodic alpha(q), with exact word counts and certified entropy.

#include <optional>
#include <utility>
#include <vector>

#include "qexp/expansions.hpp"

namespace qexp {

class SubshiftAutomaton {
 public:
  static constexpr int kNone = -1;

  /// Throws NotAdmissible unless alpha is quasi-greedy and in V.
  explicit SubshiftAutomaton(const EpSequence& alpha);

  Alphabet alphabet() const noexcept { return alpha_.alphabet(); }
  const EpSequence& alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return states_.size(); }
  int start() const noexcept { return 0; }
  /// (i, j): matched prefix lengths of alpha and reflect(alpha).
  const std::pair<std::size_t, std::size_t>& state(int s) const { return states_[s]; }
  /// Target of the d-transition, or kNone.
  int next(int s, Digit d) const { return next_[s][d]; }
  /// State after reading w from s, or kNone.
  int run(int s, const Word& w) const;
  bool accepts(const Word& w) const { return run(start(), w) != kNone; }

 private:
  EpSequence alpha_;
  std::vector<std::pair<std::size_t, std::size_t>> states_;
  std::vector<std::vector<int>> next_;
};

inline SubshiftAutomaton build_automaton(const EpSequence& alpha) { return SubshiftAutomaton(alpha); }

/// #B_n, exactly.
Integer count_words(const SubshiftAutomaton& aut, std::size_t n);

/// Topological entropy in nats per symbol. `exact_radius` is set when the
/// spectral radius is known exactly (the enclosure is then only the log rounding).
struct EntropyEnclosure {
  Rational lo;
  Rational hi;
  std::optional<Rational> exact_radius;

  RationalInterval interval() const { return {lo, hi}; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Default entropy tolerance, 2^-40.
Rational default_entropy_tolerance();

EntropyEnclosure entropy(const SubshiftAutomaton& aut, const Rational& tol = default_entropy_tolerance());

/// States left after repeatedly removing states with no incoming or no outgoing edge.
std::vector<int> essential_states(const SubshiftAutomaton& aut);
/// Strongly connected components of the essential part, each sorted, largest first.
std::vector<std::vector<int>> essential_components(const SubshiftAutomaton& aut);
bool is_transitive(const SubshiftAutomaton& aut);

/// Shortest w (ties broken lexicographically) with u w v in the language.
/// Throws NotInLanguage or NoConnection.
Word connect_words(const SubshiftAutomaton& aut, const Word& u, const Word& v);

/// Upper bound from counting length-n words against the first n digits of
/// alpha(q); lower bound from the entropy at a smaller periodic base.
EntropyEnclosure entropy_bounds_at(const BaseEnclosure& q, std::size_t n,
                                   const Rational& tol = default_entropy_tolerance());

/// Enclosure of h / log q.
RationalInterval hausdorff_dimension(const BaseEnclosure& q, const EntropyEnclosure& h);

}  // namespace qexp
