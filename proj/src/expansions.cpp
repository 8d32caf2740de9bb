#include "qexp/expansions.hpp"

#include <bit>
#include <map>

namespace qexp {

namespace {

Rational top_base(Alphabet a) { return Rational(a.M() + 1); }

Integer ceil_of(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer floor_of(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

void require_positive(const Rational& tol) {
  if (tol <= 0) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
}

// The unique root in (1, M+1] of an alpha polynomial, bracketed so that
// P(lo) < 0 < P(hi), or pinned exactly when lo == hi.
class RootBracket {
 public:
  RootBracket(IntPoly p, Rational lo, Rational hi) : p_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (p_.sign_at(lo_) == 0) {
      hi_ = lo_;
    } else if (p_.sign_at(hi_) == 0) {
      lo_ = hi_;
    } else if (p_.sign_at(lo_) > 0 || p_.sign_at(hi_) < 0) {
      throw Error(ErrorCode::InternalInvariant, "enclosure does not bracket its defining root");
    }
  }

  const IntPoly& poly() const { return p_; }

  // Sign of q(root). Zero is detected exactly through gcd(P, q): the root is
  // simple, so gcd vanishes there iff it changes sign across the bracket.
  int sign_at_root(const IntPoly& q) {
    if (q.is_zero()) return 0;
    if (lo_ == hi_) return q.sign_at(lo_);
    if (int s = decided_sign(q)) return s;
    const IntPoly g = gcd_over_q(p_, q);
    if (g.degree() >= 1 && g.sign_at(lo_) * g.sign_at(hi_) < 0) return 0;
    for (int round = 0; round < 256; ++round) {
      bisect(32);
      if (lo_ == hi_) return q.sign_at(lo_);
      if (int s = decided_sign(q)) return s;
    }
    throw Error(ErrorCode::PrecisionExhausted, "could not separate a digit decision from the root");
  }

 private:
  int decided_sign(const IntPoly& q) const {
    const RationalInterval r = q.range_on(lo_, hi_);
    if (r.lo > 0) return 1;
    if (r.hi < 0) return -1;
    return 0;
  }

  void bisect(int steps) {
    for (int i = 0; i < steps && lo_ != hi_; ++i) {
      Rational mid = (lo_ + hi_) / 2;
      const int s = p_.sign_at(mid);
      if (s == 0) {
        lo_ = hi_ = mid;
      } else if (s < 0) {
        lo_ = std::move(mid);
      } else {
        hi_ = std::move(mid);
      }
    }
  }

  IntPoly p_;
  Rational lo_;
  Rational hi_;
};

Word exact_alpha_digits(const BaseEnclosure& q, std::size_t n) {
  const int M = q.alphabet().M();
  RootBracket root(alpha_polynomial(*q.defining_alpha()), q.lo(), q.hi());
  IntPoly r(std::vector<Integer>{1});
  Word out(q.alphabet());
  for (std::size_t k = 0; k < n; ++k) {
    const IntPoly t = r.shifted().mod_monic(root.poly());
    // a_k = min(M, ceil(q r) - 1) = #{c in 1..M : q r > c}
    int digit = 0;
    while (digit < M && root.sign_at_root(t - Integer(digit + 1)) > 0) ++digit;
    out.push_back(digit);
    r = t - Integer(digit);
  }
  return out;
}

std::size_t common_prefix(const Word& a, const Word& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i;
}

}  // namespace

BaseEnclosure::BaseEnclosure(Alphabet alphabet, Rational lo, Rational hi, std::optional<EpSequence> defining_alpha)
    : alphabet_(alphabet), lo_(std::move(lo)), hi_(std::move(hi)), alpha_(std::move(defining_alpha)) {
  if (!(lo_ > 1 && lo_ <= hi_ && hi_ <= top_base(alphabet_))) {
    throw Error(ErrorCode::InvalidArgument, "base enclosure must satisfy 1 < lo <= hi <= M+1, got [" +
                                                to_string(lo_) + ", " + to_string(hi_) + "]");
  }
  if (alpha_) {
    if (alpha_->alphabet() != alphabet_) throw Error(ErrorCode::InvalidArgument, "alphabet mismatch");
    if (!is_quasi_greedy_admissible(*alpha_)) {
      throw Error(ErrorCode::NotQuasiGreedy, alpha_->str() + " is not the quasi-greedy expansion of any base");
    }
    const IntPoly p = alpha_polynomial(*alpha_);
    if (p.sign_at(lo_) > 0 || p.sign_at(hi_) < 0) {
      throw Error(ErrorCode::InvalidArgument, "enclosure does not contain the base defined by " + alpha_->str());
    }
  }
}

BaseEnclosure BaseEnclosure::refined(const Rational& tol) const {
  if (!alpha_) throw Error(ErrorCode::PrecisionExhausted, "cannot refine a base without a defining alpha");
  if (width() <= tol) return *this;
  return base_from_alpha(*alpha_, tol);
}

std::string BaseEnclosure::str(int digits) const {
  std::string s = interval().str(digits);
  if (alpha_) s += " alpha=" + alpha_->str();
  return s;
}

Rational pi_exact(const EpSequence& s, const Rational& x) {
  if (x <= 1) throw Error(ErrorCode::InvalidArgument, "pi_q needs q > 1");
  const Rational y = 1 / x;
  auto horner = [&](std::span<const Digit> ds) {
    Rational acc(0);
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) acc = (acc + *it) * y;
    return acc;
  };
  Rational ypow(1);
  for (std::size_t i = 0; i < s.preperiod().size(); ++i) ypow *= y;
  Rational ym(1);
  for (std::size_t i = 0; i < s.period().size(); ++i) ym *= y;
  return horner(s.preperiod()) + ypow * horner(s.period()) / (1 - ym);
}

RationalInterval pi_q(const EpSequence& s, const BaseEnclosure& q) {
  if (s.alphabet() != q.alphabet()) throw Error(ErrorCode::InvalidArgument, "alphabet mismatch");
  if (s.ends_in_zero() && s.is_purely_periodic()) return {0, 0};
  return {pi_exact(s, q.hi()), pi_exact(s, q.lo())};
}

IntPoly alpha_polynomial(const EpSequence& s) {
  const std::size_t k = s.preperiod().size();
  const std::size_t m = s.period().size();
  std::vector<Integer> xm_minus_1(m + 1);
  xm_minus_1[m] = 1;
  xm_minus_1[0] = -1;
  const IntPoly shift_m(xm_minus_1);
  std::vector<Integer> xk(k + 1);
  xk[k] = 1;
  std::vector<Integer> pre(k == 0 ? 1 : k);
  for (std::size_t i = 0; i < k; ++i) pre[k - 1 - i] = s.preperiod()[i];
  std::vector<Integer> per(m);
  for (std::size_t j = 0; j < m; ++j) per[m - 1 - j] = s.period()[j];
  // x^k (x^m - 1) - (x^m - 1) sum p_i x^(k-i) - sum c_j x^(m-j)
  return IntPoly(xk) * shift_m - shift_m * IntPoly(pre) - IntPoly(per);
}

BaseEnclosure base_from_alpha(const EpSequence& s, const Rational& tol) {
  require_positive(tol);
  if (!is_quasi_greedy_admissible(s)) {
    throw Error(ErrorCode::NotQuasiGreedy, s.str() + " is not the quasi-greedy expansion of any base");
  }
  const IntPoly p = alpha_polynomial(s);
  Rational lo(1);
  Rational hi = top_base(s.alphabet());
  if (p.sign_at(hi) == 0) return BaseEnclosure(s.alphabet(), hi, hi, s);
  while (lo == 1 || hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    const int sign = p.sign_at(mid);
    if (sign == 0) return BaseEnclosure(s.alphabet(), mid, mid, s);
    (sign < 0 ? lo : hi) = std::move(mid);
  }
  return BaseEnclosure(s.alphabet(), lo, hi, s);
}

Word quasi_greedy_digits(Alphabet alphabet, const Rational& q, std::size_t n) {
  if (q <= 1) throw Error(ErrorCode::InvalidArgument, "base must exceed 1");
  const Integer M(alphabet.M());
  Word out(alphabet);
  Rational r(1);
  for (std::size_t k = 0; k < n; ++k) {
    const Rational t = q * r;
    Integer d = ceil_of(t) - 1;
    if (d > M) d = M;
    out.push_back(static_cast<Digit>(d.get_si()));
    r = t - Rational(d);
  }
  return out;
}

Word greedy_digits(Alphabet alphabet, const Rational& q, std::size_t n) {
  if (q <= 1) throw Error(ErrorCode::InvalidArgument, "base must exceed 1");
  const Integer M(alphabet.M());
  Word out(alphabet);
  Rational r(1);
  for (std::size_t k = 0; k < n; ++k) {
    const Rational t = q * r;
    Integer d = floor_of(t);
    if (d > M) d = M;
    out.push_back(static_cast<Digit>(d.get_si()));
    r = t - Rational(d);
  }
  return out;
}

std::size_t certified_prefix_length(const BaseEnclosure& q, std::size_t limit) {
  if (q.defining_alpha() || q.is_point()) return limit;
  return common_prefix(quasi_greedy_digits(q.alphabet(), q.lo(), limit),
                       quasi_greedy_digits(q.alphabet(), q.hi(), limit));
}

Word alpha_digits(const BaseEnclosure& q, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "alpha_digits needs n >= 1");
  if (q.defining_alpha()) return exact_alpha_digits(q, n);
  if (q.is_point()) return quasi_greedy_digits(q.alphabet(), q.lo(), n);
  // alpha is nondecreasing in q, so a prefix shared by alpha(lo) and alpha(hi)
  // is shared by every base in between.
  Word low = quasi_greedy_digits(q.alphabet(), q.lo(), n);
  const Word high = quasi_greedy_digits(q.alphabet(), q.hi(), n);
  const std::size_t agree = common_prefix(low, high);
  if (agree < n) {
    throw Error(ErrorCode::PrecisionExhausted, "enclosure " + q.str() + " certifies only " + std::to_string(agree) +
                                                   " digits of alpha(q), " + std::to_string(n) + " requested");
  }
  return low;
}

Word thue_morse(std::size_t n) {
  Word out(Alphabet(1));
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::popcount(i) % 2);
  return out;
}

Word lambda_digits(Alphabet alphabet, std::size_t n) {
  const int M = alphabet.M();
  const int k = M / 2;
  const Word tau = thue_morse(n);
  Word out(alphabet);
  for (std::size_t i = 0; i < n; ++i) {
    const int prev = i == 0 ? 0 : tau[i - 1];
    out.push_back(M % 2 == 0 ? k + tau[i] - prev : k + tau[i]);
  }
  return out;
}

BaseEnclosure base_from_digit_source(Alphabet alphabet, const std::function<Word(std::size_t)>& prefix,
                                     const Rational& tol) {
  require_positive(tol);
  constexpr std::size_t kMaxDigits = std::size_t{1} << 16;
  const int M = alphabet.M();
  Rational lo(1);
  Rational hi = top_base(alphabet);
  std::size_t depth = 32;
  Word digits = prefix(depth);
  while (lo == 1 || hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    const Rational y = 1 / mid;
    for (;;) {
      Rational partial(0);
      for (std::size_t i = depth; i-- > 0;) partial = (partial + digits[i]) * y;
      Rational ypow(1);
      for (std::size_t i = 0; i < depth; ++i) ypow *= y;
      const Rational tail = M * ypow / (mid - 1);
      if (partial > 1) {
        lo = std::move(mid);
        break;
      }
      if (partial + tail < 1) {
        hi = std::move(mid);
        break;
      }
      depth *= 2;
      if (depth > kMaxDigits) {
        throw Error(ErrorCode::PrecisionExhausted, "digit source does not separate from the midpoint");
      }
      digits = prefix(depth);
    }
  }
  return BaseEnclosure(alphabet, lo, hi);
}

EpSequence golden_alpha(Alphabet alphabet) {
  const int M = alphabet.M();
  const int k = M / 2;
  if (M % 2 == 0) return EpSequence::periodic(Word(alphabet, {k}));
  return EpSequence::periodic(Word(alphabet, {k + 1, k}));
}

EpSequence prime_alpha(Alphabet alphabet, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "q'_n is defined for n >= 1");
  const std::size_t len = alphabet.M() % 2 == 0 ? std::size_t{1} << (n - 1) : std::size_t{1} << n;
  const Word head = lambda_digits(alphabet, len);
  return EpSequence(head, increment_last(reflect(head)));
}

BaseEnclosure special_base(Alphabet alphabet, SpecialBase which, const Rational& tol) {
  switch (which.kind) {
    case SpecialBase::Kind::Golden:
      return base_from_alpha(golden_alpha(alphabet), tol);
    case SpecialBase::Kind::KomornikLoreti:
      return base_from_digit_source(alphabet, [alphabet](std::size_t n) { return lambda_digits(alphabet, n); }, tol);
    case SpecialBase::Kind::Transitive:
      return base_from_alpha(prime_alpha(alphabet, 1), tol);
    case SpecialBase::Kind::Prime:
      return base_from_alpha(prime_alpha(alphabet, which.n), tol);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown special base");
}

std::pair<BaseEnclosure, BaseEnclosure> fundamental_interval(const FundamentalWord& a, const Rational& tol) {
  const Word& w = a.word();
  const EpSequence left = EpSequence::periodic(w);
  const EpSequence right(increment_last(w), reflect(w));
  Rational t = tol;
  for (;;) {
    BaseEnclosure ql = base_from_alpha(left, t);
    BaseEnclosure qr = base_from_alpha(right, t);
    if (ql.hi() < qr.lo()) return {std::move(ql), std::move(qr)};
    t /= Rational(Integer(1) << 32);
  }
}

std::partial_ordering compare_bases(const BaseEnclosure& x, const BaseEnclosure& y) {
  if (x.hi() < y.lo()) return std::partial_ordering::less;
  if (y.hi() < x.lo()) return std::partial_ordering::greater;
  if (x.is_point() && y.is_point()) return std::partial_ordering::equivalent;
  if (x.defining_alpha() && y.defining_alpha() && x.alphabet() == y.alphabet()) {
    // alpha is a strictly increasing bijection, so the alphas order the bases.
    return lex_compare(*x.defining_alpha(), *y.defining_alpha());
  }
  return std::partial_ordering::unordered;
}

namespace {

// Compares an infinite sequence against alpha(q) (or its reflection) using
// ever longer certified prefixes.
class AlphaOracle {
 public:
  explicit AlphaOracle(const BaseEnclosure& q) : q_(q) {}

  std::strong_ordering compare(const EpSequence& x, bool reflected) {
    if (const auto& a = q_.defining_alpha()) return lex_compare(x, reflected ? reflect(*a) : *a);
    for (std::size_t len = 64;; len *= 2) {
      ensure(len);
      for (std::size_t i = 0; i < len; ++i) {
        const Digit ai = reflected ? q_.alphabet().reflect(prefix_[i]) : prefix_[i];
        if (x.at(i) != ai) return x.at(i) <=> ai;
      }
      if (len >= 4096) {
        throw Error(ErrorCode::PrecisionExhausted, "sequence agrees with alpha(q) on every certified digit");
      }
    }
  }

 private:
  void ensure(std::size_t len) {
    if (prefix_.size() < len) prefix_ = alpha_digits(q_, len);
  }

  const BaseEnclosure& q_;
  Word prefix_{Alphabet(1)};
};

}  // namespace

bool is_univoque_sequence(const EpSequence& d, const BaseEnclosure& q) {
  if (d.alphabet() != q.alphabet()) throw Error(ErrorCode::InvalidArgument, "alphabet mismatch");
  const int M = d.alphabet().M();
  AlphaOracle alpha(q);
  // (d_n, shift^n d) repeats after |pre| + |period| steps.
  for (std::size_t n = 1; n <= d.distinct_shifts(); ++n) {
    const Digit dn = d.at(n - 1);
    const EpSequence tail = d.shift(n);
    if (dn < M && alpha.compare(tail, false) >= 0) return false;
    if (dn > 0 && alpha.compare(tail, true) <= 0) return false;
  }
  return true;
}

}  // namespace qexp
