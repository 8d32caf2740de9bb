#pragma once

// Exact rational numbers (GMP) and closed rational intervals.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qexp {

using Integer = mpz_class;
using Rational = mpq_class;

/// 2^-64: the default width for base enclosures.
Rational default_tolerance();
/// 2^-k, k >= 0.
Rational pow2_neg(unsigned k);

/// Accepts "p/q", integers and plain decimals ("1.8019", "-3e-5" is rejected).
Rational parse_rational(std::string_view text);
/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& x);

enum class Rounding { Down, Up };
/// Decimal rendering with `digits` fractional digits, rounded in the given direction.
std::string to_decimal(const Rational& x, int digits, Rounding mode);

/// Certified bound on log(x) for x > 0: a rational below (Down) or above (Up)
/// the true value, accurate to about `bits` bits.
Rational log_bound(const Rational& x, Rounding mode, unsigned bits = 160);

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool overlaps(const RationalInterval& o, const Rational& slack = 0) const {
    return lo <= o.hi + slack && o.lo <= hi + slack;
  }
  std::string str(int digits = 12) const;
};

}  // namespace qexp
