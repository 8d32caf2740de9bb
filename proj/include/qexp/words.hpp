#pragma once

// Digits, finite words and eventually periodic sequences over {0, ..., M}.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qexp/error.hpp"

namespace qexp {

using Digit = int;

class Alphabet {
 public:
  explicit Alphabet(int max_digit);

  int M() const noexcept { return max_digit_; }
  bool contains(Digit d) const noexcept { return d >= 0 && d <= max_digit_; }
  Digit reflect(Digit d) const noexcept { return max_digit_ - d; }

  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  int max_digit_;
};

/// A finite digit string. The empty word exists only as the result of
/// operations such as `connect_words`; parsing and all word predicates reject it.
class Word {
 public:
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}
  Word(Alphabet alphabet, std::vector<Digit> digits);

  /// Digit strings for M <= 9 ("110"); bracketed lists otherwise ("[10,3,0]").
  static Word parse(std::string_view text, Alphabet alphabet);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  Digit back() const { return digits_.back(); }
  std::span<const Digit> digits() const noexcept { return digits_; }

  Word substr(std::size_t pos, std::size_t len = std::string::npos) const;
  Word repeat(std::size_t times) const;
  void push_back(Digit d);
  void append(const Word& other);

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend Word operator+(Word lhs, const Word& rhs) {
    lhs.append(rhs);
    return lhs;
  }

 private:
  Alphabet alphabet_;
  std::vector<Digit> digits_;
};

/// preperiod . (period)^infinity, always kept in canonical form: primitive
/// period, shortest preperiod. Structural equality is sequence equality.
class EpSequence {
 public:
  EpSequence(Alphabet alphabet, std::vector<Digit> preperiod, std::vector<Digit> period);
  EpSequence(const Word& preperiod, const Word& period);
  /// w^infinity
  static EpSequence periodic(const Word& period);
  /// "pre(period)", e.g. "11(01)" or "(10)"; bracketed digit lists for M >= 10.
  static EpSequence parse(std::string_view text, Alphabet alphabet);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::span<const Digit> preperiod() const noexcept { return pre_; }
  std::span<const Digit> period() const noexcept { return period_; }
  bool is_purely_periodic() const noexcept { return pre_.empty(); }

  /// Zero-based digit access into the infinite sequence.
  Digit at(std::size_t i) const noexcept {
    return i < pre_.size() ? pre_[i] : period_[(i - pre_.size()) % period_.size()];
  }
  Word prefix(std::size_t n) const;
  EpSequence shift(std::size_t n) const;
  /// |preperiod| + |period|: shifts 0 .. count-1 are all the distinct shifts.
  std::size_t distinct_shifts() const noexcept { return pre_.size() + period_.size(); }
  bool ends_in_zero() const noexcept { return period_.size() == 1 && period_[0] == 0; }

  std::string str() const;

  friend bool operator==(const EpSequence&, const EpSequence&) = default;

 private:
  void canonicalize();

  Alphabet alphabet_;
  std::vector<Digit> pre_;
  std::vector<Digit> period_;
};

Word reflect(const Word& w);
EpSequence reflect(const EpSequence& s);

Word increment_last(const Word& w);
Word decrement_last(const Word& w);

// Lexicographic order. Words are compared as w 0^infinity, so "10" and "100"
// compare equal; mixed comparisons pad the word the same way.
std::strong_ordering lex_compare(const Word& x, const Word& y);
std::strong_ordering lex_compare(const EpSequence& x, const EpSequence& y);
std::strong_ordering lex_compare(const Word& x, const EpSequence& y);
std::strong_ordering lex_compare(const EpSequence& x, const Word& y);

/// reflect(s) <= shift^n(s) <= s for every n.
bool is_admissible_v(const EpSequence& s);
/// s does not end in 0^infinity and shift^n(s) <= s for every n; such s is
/// alpha(q) for exactly one base q in (1, M+1].
bool is_quasi_greedy_admissible(const EpSequence& s);
bool is_fundamental(const Word& w);

class FundamentalWord {
 public:
  /// Throws NotFundamental.
  explicit FundamentalWord(Word w);
  static std::optional<FundamentalWord> try_make(Word w);
  static FundamentalWord parse(std::string_view text, Alphabet alphabet) {
    return FundamentalWord(Word::parse(text, alphabet));
  }

  const Word& word() const noexcept { return word_; }
  Alphabet alphabet() const noexcept { return word_.alphabet(); }
  std::size_t size() const noexcept { return word_.size(); }
  std::string str() const { return word_.str(); }

  friend bool operator==(const FundamentalWord&, const FundamentalWord&) = default;

 private:
  struct Unchecked {};
  FundamentalWord(Word w, Unchecked) : word_(std::move(w)) {}
  Word word_;
};

}  // namespace qexp
