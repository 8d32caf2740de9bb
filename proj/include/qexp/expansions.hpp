#pragma once

// Certified numerics connecting digit sequences and bases q in (1, M+1].

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>

#include "qexp/polynomial.hpp"
#include "qexp/rational.hpp"
#include "qexp/words.hpp"

namespace qexp {

/// A base q in (1, M+1] known to lie in [lo, hi]. When `defining_alpha` is
/// present, q is the unique base with alpha(q) equal to it, and the enclosure
/// is a bracket of the root of the corresponding polynomial.
class BaseEnclosure {
 public:
  BaseEnclosure(Alphabet alphabet, Rational lo, Rational hi, std::optional<EpSequence> defining_alpha = {});
  static BaseEnclosure exact(Alphabet alphabet, const Rational& q) { return {alphabet, q, q}; }

  Alphabet alphabet() const noexcept { return alphabet_; }
  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool is_point() const { return lo_ == hi_; }
  RationalInterval interval() const { return {lo_, hi_}; }
  const std::optional<EpSequence>& defining_alpha() const noexcept { return alpha_; }

  /// Tighter enclosure of the same base; requires a defining alpha.
  BaseEnclosure refined(const Rational& tol) const;

  std::string str(int digits = 12) const;

 private:
  Alphabet alphabet_;
  Rational lo_;
  Rational hi_;
  std::optional<EpSequence> alpha_;
};

/// Exact value of sum s_i x^-i for rational x > 1.
Rational pi_exact(const EpSequence& s, const Rational& x);
/// Enclosure of pi_q(s) over the whole base enclosure (pi_q is nonincreasing in q).
RationalInterval pi_q(const EpSequence& s, const BaseEnclosure& q);

/// Monic integer polynomial whose unique root in (1, M+1] is the base with
/// alpha(q) = s: pi_q(s) = 1 with denominators cleared.
IntPoly alpha_polynomial(const EpSequence& s);

/// Throws NotQuasiGreedy unless s is quasi-greedy admissible.
BaseEnclosure base_from_alpha(const EpSequence& s, const Rational& tol = default_tolerance());

/// First n digits of alpha(q). With a defining alpha the quasi-greedy
/// recursion runs exactly at the algebraic root; otherwise the prefix must be
/// shared by every base in the enclosure, else PrecisionExhausted.
Word alpha_digits(const BaseEnclosure& q, std::size_t n);

/// Number of leading digits of alpha(q) certified by the enclosure alone.
std::size_t certified_prefix_length(const BaseEnclosure& q, std::size_t limit);

/// Quasi-greedy and greedy expansions of 1 at an exact rational base.
Word quasi_greedy_digits(Alphabet alphabet, const Rational& q, std::size_t n);
Word greedy_digits(Alphabet alphabet, const Rational& q, std::size_t n);

Word thue_morse(std::size_t n);
/// lambda_1 .. lambda_n, the Thue-Morse-derived digits of alpha(q_KL).
Word lambda_digits(Alphabet alphabet, std::size_t n);

/// Root of pi_q(S) = 1 for an infinite sequence S given by its prefixes:
/// bisection with the tail of S bounded by M q^-N / (q - 1).
BaseEnclosure base_from_digit_source(Alphabet alphabet, const std::function<Word(std::size_t)>& prefix,
                                     const Rational& tol);

EpSequence golden_alpha(Alphabet alphabet);
/// alpha(q'_n), n >= 1.
EpSequence prime_alpha(Alphabet alphabet, unsigned n);

struct SpecialBase {
  enum class Kind { Golden, KomornikLoreti, Transitive, Prime };
  Kind kind;
  unsigned n = 1;  // only for Prime
};

BaseEnclosure special_base(Alphabet alphabet, SpecialBase which, const Rational& tol = default_tolerance());
inline BaseEnclosure golden_base(Alphabet a, const Rational& tol = default_tolerance()) {
  return special_base(a, {SpecialBase::Kind::Golden}, tol);
}
inline BaseEnclosure komornik_loreti_base(Alphabet a, const Rational& tol = default_tolerance()) {
  return special_base(a, {SpecialBase::Kind::KomornikLoreti}, tol);
}
inline BaseEnclosure transitive_base(Alphabet a, const Rational& tol = default_tolerance()) {
  return special_base(a, {SpecialBase::Kind::Transitive}, tol);
}
inline BaseEnclosure prime_base(Alphabet a, unsigned n, const Rational& tol = default_tolerance()) {
  return special_base(a, {SpecialBase::Kind::Prime, n}, tol);
}

/// (q_L(a), q_R(a)) with alpha(q_L) = a^inf and alpha(q_R) = a+ reflect(a)^inf.
std::pair<BaseEnclosure, BaseEnclosure> fundamental_interval(const FundamentalWord& a,
                                                             const Rational& tol = default_tolerance());

/// Ordering of two bases, certified either by disjoint enclosures or (for
/// bases with defining alphas) by comparing the alphas. `unordered` means the
/// enclosures overlap and no exact route is available.
std::partial_ordering compare_bases(const BaseEnclosure& x, const BaseEnclosure& y);

/// Lexicographic test that d is the unique expansion of pi_q(d).
bool is_univoque_sequence(const EpSequence& d, const BaseEnclosure& q);

}  // namespace qexp
