#include "qexp/words.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace qexp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DigitOverflow: return "DigitOverflow";
    case ErrorCode::DigitUnderflow: return "DigitUnderflow";
    case ErrorCode::NotFundamental: return "NotFundamental";
    case ErrorCode::NotQuasiGreedy: return "NotQuasiGreedy";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotInXa: return "NotInXa";
    case ErrorCode::AmbiguousStart: return "AmbiguousStart";
    case ErrorCode::BadStart: return "BadStart";
    case ErrorCode::NotInLanguage: return "NotInLanguage";
    case ErrorCode::NoConnection: return "NoConnection";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

Alphabet::Alphabet(int max_digit) : max_digit_(max_digit) {
  if (max_digit < 1) throw Error(ErrorCode::InvalidArgument, "alphabet requires M >= 1");
}

namespace {

void check_digits(Alphabet alphabet, std::span<const Digit> digits) {
  for (Digit d : digits) {
    if (!alphabet.contains(d)) {
      throw Error(ErrorCode::InvalidArgument,
                  "digit " + std::to_string(d) + " outside {0..." + std::to_string(alphabet.M()) + "}");
    }
  }
}

std::vector<Digit> parse_digits(std::string_view text, Alphabet alphabet) {
  std::vector<Digit> out;
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw Error(ErrorCode::InvalidArgument, "unterminated digit list");
    text = text.substr(1, text.size() - 2);
    while (!text.empty()) {
      auto comma = text.find(',');
      auto item = text.substr(0, comma);
      Digit d = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
      if (ec != std::errc{} || ptr != item.data() + item.size()) {
        throw Error(ErrorCode::InvalidArgument, "bad digit '" + std::string(item) + "'");
      }
      out.push_back(d);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
  } else {
    if (alphabet.M() > 9) {
      throw Error(ErrorCode::InvalidArgument, "words over M >= 10 must use the [d,d,...] form");
    }
    for (char c : text) {
      if (c < '0' || c > '9') throw Error(ErrorCode::InvalidArgument, std::string("bad digit '") + c + "'");
      out.push_back(c - '0');
    }
  }
  check_digits(alphabet, out);
  return out;
}

std::string format_digits(Alphabet alphabet, std::span<const Digit> digits) {
  std::string out;
  if (alphabet.M() <= 9) {
    for (Digit d : digits) out.push_back(static_cast<char>('0' + d));
    return out;
  }
  if (digits.empty()) return out;
  out.push_back('[');
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(digits[i]);
  }
  out.push_back(']');
  return out;
}

}  // namespace

Word::Word(Alphabet alphabet, std::vector<Digit> digits) : alphabet_(alphabet), digits_(std::move(digits)) {
  check_digits(alphabet_, digits_);
}

Word Word::parse(std::string_view text, Alphabet alphabet) {
  auto digits = parse_digits(text, alphabet);
  if (digits.empty()) throw Error(ErrorCode::InvalidArgument, "empty word");
  return Word(alphabet, std::move(digits));
}

Word Word::substr(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, digits_.size());
  len = std::min(len, digits_.size() - pos);
  return Word(alphabet_, std::vector<Digit>(digits_.begin() + pos, digits_.begin() + pos + len));
}

Word Word::repeat(std::size_t times) const {
  Word out(alphabet_);
  out.digits_.reserve(digits_.size() * times);
  for (std::size_t t = 0; t < times; ++t) out.digits_.insert(out.digits_.end(), digits_.begin(), digits_.end());
  return out;
}

void Word::push_back(Digit d) {
  if (!alphabet_.contains(d)) throw Error(ErrorCode::InvalidArgument, "digit outside alphabet");
  digits_.push_back(d);
}

void Word::append(const Word& other) {
  if (other.alphabet_ != alphabet_) throw Error(ErrorCode::InvalidArgument, "alphabet mismatch");
  digits_.insert(digits_.end(), other.digits_.begin(), other.digits_.end());
}

std::string Word::str() const { return format_digits(alphabet_, digits_); }

EpSequence::EpSequence(Alphabet alphabet, std::vector<Digit> preperiod, std::vector<Digit> period)
    : alphabet_(alphabet), pre_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw Error(ErrorCode::InvalidArgument, "empty period");
  check_digits(alphabet_, pre_);
  check_digits(alphabet_, period_);
  canonicalize();
}

EpSequence::EpSequence(const Word& preperiod, const Word& period)
    : EpSequence(period.alphabet(), {preperiod.digits().begin(), preperiod.digits().end()},
                 {period.digits().begin(), period.digits().end()}) {
  if (preperiod.alphabet() != period.alphabet()) throw Error(ErrorCode::InvalidArgument, "alphabet mismatch");
}

EpSequence EpSequence::periodic(const Word& period) { return EpSequence(Word(period.alphabet()), period); }

EpSequence EpSequence::parse(std::string_view text, Alphabet alphabet) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')') {
    throw Error(ErrorCode::InvalidArgument, "sequence literal must look like pre(period)");
  }
  auto pre = parse_digits(text.substr(0, open), alphabet);
  auto period = parse_digits(text.substr(open + 1, text.size() - open - 2), alphabet);
  return EpSequence(alphabet, std::move(pre), std::move(period));
}

void EpSequence::canonicalize() {
  const std::size_t n = period_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool root = true;
    for (std::size_t i = d; i < n && root; ++i) root = period_[i] == period_[i - d];
    if (root) {
      period_.resize(d);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    pre_.pop_back();
  }
}

Word EpSequence::prefix(std::size_t n) const {
  std::vector<Digit> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
  return Word(alphabet_, std::move(out));
}

EpSequence EpSequence::shift(std::size_t n) const {
  if (n <= pre_.size()) return EpSequence(alphabet_, {pre_.begin() + n, pre_.end()}, period_);
  std::vector<Digit> period(period_.size());
  const std::size_t offset = (n - pre_.size()) % period_.size();
  for (std::size_t i = 0; i < period.size(); ++i) period[i] = period_[(offset + i) % period_.size()];
  return EpSequence(alphabet_, {}, std::move(period));
}

std::string EpSequence::str() const {
  return format_digits(alphabet_, pre_) + "(" + format_digits(alphabet_, period_) + ")";
}

Word reflect(const Word& w) {
  std::vector<Digit> out(w.digits().begin(), w.digits().end());
  for (auto& d : out) d = w.alphabet().reflect(d);
  return Word(w.alphabet(), std::move(out));
}

EpSequence reflect(const EpSequence& s) {
  auto flip = [&](std::span<const Digit> ds) {
    std::vector<Digit> out(ds.begin(), ds.end());
    for (auto& d : out) d = s.alphabet().reflect(d);
    return out;
  };
  return EpSequence(s.alphabet(), flip(s.preperiod()), flip(s.period()));
}

Word increment_last(const Word& w) {
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "empty word");
  if (w.back() >= w.alphabet().M()) throw Error(ErrorCode::DigitOverflow, w.str() + " ends in M");
  std::vector<Digit> out(w.digits().begin(), w.digits().end());
  ++out.back();
  return Word(w.alphabet(), std::move(out));
}

Word decrement_last(const Word& w) {
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "empty word");
  if (w.back() <= 0) throw Error(ErrorCode::DigitUnderflow, w.str() + " ends in 0");
  std::vector<Digit> out(w.digits().begin(), w.digits().end());
  --out.back();
  return Word(w.alphabet(), std::move(out));
}

namespace {

void require_same(Alphabet a, Alphabet b) {
  if (a != b) throw Error(ErrorCode::InvalidArgument, "comparison across alphabets");
}

// Number of leading digits after which two eventually periodic sequences
// either differ or are known to be equal.
std::size_t decisive_length(const EpSequence& x, const EpSequence& y) {
  return std::max(x.preperiod().size(), y.preperiod().size()) + std::lcm(x.period().size(), y.period().size());
}

}  // namespace

std::strong_ordering lex_compare(const Word& x, const Word& y) {
  require_same(x.alphabet(), y.alphabet());
  const std::size_t n = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Digit a = i < x.size() ? x[i] : 0;
    const Digit b = i < y.size() ? y[i] : 0;
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering lex_compare(const EpSequence& x, const EpSequence& y) {
  require_same(x.alphabet(), y.alphabet());
  const std::size_t n = decisive_length(x, y);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.at(i) != y.at(i)) return x.at(i) <=> y.at(i);
  }
  return std::strong_ordering::equal;
}

std::strong_ordering lex_compare(const Word& x, const EpSequence& y) {
  return lex_compare(EpSequence(x, Word(x.alphabet(), {0})), y);
}

std::strong_ordering lex_compare(const EpSequence& x, const Word& y) {
  return lex_compare(x, EpSequence(y, Word(y.alphabet(), {0})));
}

bool is_admissible_v(const EpSequence& s) {
  const EpSequence lower = reflect(s);
  for (std::size_t n = 0; n < s.distinct_shifts(); ++n) {
    const EpSequence t = s.shift(n);
    if (lex_compare(t, s) > 0 || lex_compare(t, lower) < 0) return false;
  }
  return true;
}

bool is_quasi_greedy_admissible(const EpSequence& s) {
  if (s.ends_in_zero()) return false;
  for (std::size_t n = 1; n < s.distinct_shifts(); ++n) {
    if (lex_compare(s.shift(n), s) > 0) return false;
  }
  return true;
}

bool is_fundamental(const Word& w) {
  const int M = w.alphabet().M();
  const std::size_t m = w.size();
  if (m == 0) return false;
  if (m == 1) return M >= 2 && M - w[0] <= w[0] && w[0] < M;
  // reflect(a_1..a_{m-i}) <= a_{i+1}..a_m < a_1..a_{m-i}, equal-length words.
  for (std::size_t i = 1; i < m; ++i) {
    const std::size_t len = m - i;
    std::strong_ordering upper = std::strong_ordering::equal;
    std::strong_ordering lower = std::strong_ordering::equal;
    for (std::size_t k = 0; k < len; ++k) {
      const Digit tail = w[i + k];
      if (upper == std::strong_ordering::equal && tail != w[k]) upper = tail <=> w[k];
      if (lower == std::strong_ordering::equal && tail != M - w[k]) lower = tail <=> (M - w[k]);
    }
    if (upper >= 0 || lower < 0) return false;
  }
  return true;
}

FundamentalWord::FundamentalWord(Word w) : word_(std::move(w)) {
  if (!is_fundamental(word_)) throw Error(ErrorCode::NotFundamental, "'" + word_.str() + "' is not fundamental");
}

std::optional<FundamentalWord> FundamentalWord::try_make(Word w) {
  if (!is_fundamental(w)) return std::nullopt;
  return FundamentalWord(std::move(w), Unchecked{});
}

}  // namespace qexp
