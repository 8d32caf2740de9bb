#include "qexp/polynomial.hpp"

#include <algorithm>

#include "qexp/error.hpp"

namespace qexp {

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational IntPoly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

int IntPoly::sign_at(const Rational& x) const {
  // b^d p(a/b) by Horner over the integers.
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  Integer acc(0);
  Integer bpow(1);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * a + *it * bpow;
    bpow *= b;
  }
  return sgn(acc);
}

RationalInterval IntPoly::range_on(const Rational& lo, const Rational& hi) const {
  // Split into positive and negative parts; both are nondecreasing on x >= 0.
  Rational pos_lo(0), pos_hi(0), neg_lo(0), neg_hi(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    pos_lo *= lo;
    pos_hi *= hi;
    neg_lo *= lo;
    neg_hi *= hi;
    if (*it > 0) {
      pos_lo += *it;
      pos_hi += *it;
    } else if (*it < 0) {
      neg_lo -= *it;
      neg_hi -= *it;
    }
  }
  return {pos_lo - neg_hi, pos_hi - neg_lo};
}

IntPoly IntPoly::shifted() const {
  if (coeffs_.empty()) return *this;
  std::vector<Integer> c(coeffs_.size() + 1);
  std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::mod_monic(const IntPoly& monic) const {
  if (monic.is_zero() || monic.coeffs_.back() != 1) {
    throw Error(ErrorCode::InternalInvariant, "mod_monic needs a monic divisor");
  }
  std::vector<Integer> r = coeffs_;
  const int d = monic.degree();
  for (int k = static_cast<int>(r.size()) - 1; k >= d; --k) {
    const Integer lead = r[k];
    if (lead == 0) continue;
    for (int i = 0; i <= d; ++i) r[k - d + i] -= lead * monic.coeffs_[i];
  }
  if (static_cast<int>(r.size()) > d) r.resize(d);
  return IntPoly(std::move(r));
}

IntPoly operator-(IntPoly p, const Integer& c) {
  if (p.coeffs_.empty()) p.coeffs_.emplace_back(0);
  p.coeffs_[0] -= c;
  p.trim();
  return p;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(c));
}

namespace {

using RatCoeffs = std::vector<Rational>;

void trim(RatCoeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatCoeffs rat_mod(RatCoeffs a, const RatCoeffs& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace

IntPoly gcd_over_q(const IntPoly& a, const IntPoly& b) {
  RatCoeffs x(a.coeffs().begin(), a.coeffs().end());
  RatCoeffs y(b.coeffs().begin(), b.coeffs().end());
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    RatCoeffs r = rat_mod(x, y);
    x = std::move(y);
    y = std::move(r);
    // Monic normalization keeps coefficient growth in check.
    if (!y.empty()) {
      const Rational lead = y.back();
      for (auto& c : y) c /= lead;
    }
  }
  if (x.empty()) return {};
  Integer den(1);
  for (const auto& c : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(x.size());
  for (const auto& c : x) {
    Rational scaled = c * den;
    out.push_back(scaled.get_num());
  }
  return IntPoly(std::move(out));
}

}  // namespace qexp
