#pragma once

// Block substitution through the four-block automaton of a fundamental word,
// the composition semigroup built on it, and irreducible decomposition.

#include <array>
#include <vector>

#include "qexp/expansions.hpp"
#include "qexp/words.hpp"

namespace qexp {

enum class Vertex { Start, A, B };

/// The four block types of a word a: a, a+, reflect(a), reflect(a+).
enum class BlockLabel { Plain, Plus, Reflected, ReflectedPlus };

struct BlockEdge {
  int id;
  Vertex from;
  Vertex to;
  BlockLabel label;
  int bit;
};

/// e0 .. e4, indexed by id.
const std::array<BlockEdge, 5>& block_edges();

/// The concrete digits of a block label for the word a.
Word block_word(const FundamentalWord& a, BlockLabel label);

struct BlockParse {
  std::vector<int> path;  // edge ids
  std::vector<BlockLabel> blocks;
};

/// Splits w into blocks of length |a| and follows them through the automaton.
/// Throws NotInXa, or AmbiguousStart when a equals its reflection and w starts with a.
BlockParse parse_blocks(const FundamentalWord& a, const Word& w);

Word phi(const FundamentalWord& a, const Word& w);
/// Walks the bits of b from Start; b must begin with 1 (BadStart otherwise).
Word phi_inverse(const FundamentalWord& a, const Word& b);

/// a o b for a over any alphabet and b over {0,1}.
FundamentalWord compose(const FundamentalWord& a, const FundamentalWord& b);

struct Decomposition {
  FundamentalWord head;
  std::vector<FundamentalWord> tail;  // all over {0,1}

  std::size_t size() const { return 1 + tail.size(); }
  FundamentalWord recompose() const;
  std::vector<std::string> strings() const;
};

Decomposition decompose(const FundamentalWord& c);

struct Classification {
  enum class Kind { Irreducible, NIrreducible, Reducible };
  Kind kind;
  unsigned n = 0;  // only for NIrreducible

  std::string str() const;
  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify(const FundamentalWord& c);
Classification classify(const Decomposition& d);

/// k for M = 2k, (k+1)k for M = 2k+1.
FundamentalWord unit_lift(Alphabet alphabet);

/// The base over {0,1} whose quasi-greedy expansion is phi(a, alpha(q)).
/// Needs q with a defining alpha inside (q_L(a), q_R(a)].
BaseEnclosure phi_hat(const FundamentalWord& a, const BaseEnclosure& q, const Rational& tol = default_tolerance());

/// q_c(a): alpha(q_c(a)) = phi_inverse(a, Thue-Morse).
BaseEnclosure de_vries_komornik(const FundamentalWord& a, const Rational& tol = default_tolerance());

}  // namespace qexp
