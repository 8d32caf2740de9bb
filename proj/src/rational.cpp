#include "qexp/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>

#include "qexp/error.hpp"

namespace qexp {

Rational default_tolerance() { return pow2_neg(64); }

Rational pow2_neg(unsigned k) {
  Rational r(1);
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), k);
  return r;
}

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::InvalidArgument, "cannot parse number '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational r;
    if (r.set_str(std::string(text), 10) != 0) throw fail();
    if (r.get_den() == 0) throw fail();
    r.canonicalize();
    return r;
  }
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string digits;
  std::size_t fraction = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++fraction;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  Integer num(digits, 10);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fraction);
  Rational r(num, den);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& x) { return x.get_str(10); }

std::string to_decimal(const Rational& x, int digits, Rounding mode) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = x * scale;
  Integer n;
  if (mode == Rounding::Down) {
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  } else {
    mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  }
  const bool negative = n < 0;
  std::string s = Integer(abs(n)).get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

Rational log_bound(const Rational& x, Rounding mode, unsigned bits) {
  if (x <= 0) throw Error(ErrorCode::InvalidArgument, "log of a non-positive number");
  const mpfr_rnd_t rnd = mode == Rounding::Down ? MPFR_RNDD : MPFR_RNDU;
  mpfr_t v;
  mpfr_init2(v, bits);
  // log is increasing, so rounding the argument the same way keeps the bound valid.
  mpfr_set_q(v, x.get_mpq_t(), rnd);
  mpfr_log(v, v, rnd);
  Rational out;
  if (mpfr_zero_p(v)) {
    out = 0;
  } else {
    Integer mant;
    const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
    out = Rational(mant);
    if (e >= 0) {
      mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    out.canonicalize();
  }
  mpfr_clear(v);
  return out;
}

std::string RationalInterval::str(int digits) const {
  return "[" + to_decimal(lo, digits, Rounding::Down) + ", " + to_decimal(hi, digits, Rounding::Up) + "]";
}

}  // namespace qexp
