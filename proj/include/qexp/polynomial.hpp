#pragma once

// Small dense polynomials used to pin down algebraic bases exactly.

#include <vector>

#include "qexp/rational.hpp"

namespace qexp {

/// Integer coefficients, index = degree. Kept trimmed (no leading zeros).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational operator()(const Rational& x) const;
  /// Sign of the value at x, computed without building a rational.
  int sign_at(const Rational& x) const;
  /// Enclosure of the values on [lo, hi], valid for 0 <= lo <= hi.
  RationalInterval range_on(const Rational& lo, const Rational& hi) const;

  /// x * p
  IntPoly shifted() const;
  /// Remainder modulo a monic polynomial.
  IntPoly mod_monic(const IntPoly& monic) const;

  friend IntPoly operator-(IntPoly p, const Integer& c);
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Greatest common divisor over Q, made monic; the result is returned with
/// its denominators cleared.
IntPoly gcd_over_q(const IntPoly& a, const IntPoly& b);

}  // namespace qexp
