#include "qexp/composition.hpp"

#include <map>
#include <numeric>
#include <optional>

namespace qexp {

const std::array<BlockEdge, 5>& block_edges() {
  static const std::array<BlockEdge, 5> edges{{
      {0, Vertex::Start, Vertex::A, BlockLabel::Plus, 1},
      {1, Vertex::A, Vertex::B, BlockLabel::ReflectedPlus, 0},
      {2, Vertex::B, Vertex::B, BlockLabel::Plain, 0},
      {3, Vertex::B, Vertex::A, BlockLabel::Plus, 1},
      {4, Vertex::A, Vertex::A, BlockLabel::Reflected, 1},
  }};
  return edges;
}

Word block_word(const FundamentalWord& a, BlockLabel label) {
  switch (label) {
    case BlockLabel::Plain:
      return a.word();
    case BlockLabel::Plus:
      return increment_last(a.word());
    case BlockLabel::Reflected:
      return reflect(a.word());
    case BlockLabel::ReflectedPlus:
      return reflect(increment_last(a.word()));
  }
  throw Error(ErrorCode::InternalInvariant, "unknown block label");
}

namespace {

struct Blocks {
  std::array<Word, 4> words;

  explicit Blocks(const FundamentalWord& a)
      : words{block_word(a, BlockLabel::Plain), block_word(a, BlockLabel::Plus), block_word(a, BlockLabel::Reflected),
              block_word(a, BlockLabel::ReflectedPlus)} {}

  const Word& of(BlockLabel l) const { return words[static_cast<int>(l)]; }
};

std::optional<BlockEdge> edge_for_block(const Blocks& blocks, Vertex v, const Word& block) {
  for (const auto& e : block_edges()) {
    if (e.from == v && blocks.of(e.label) == block) return e;
  }
  return std::nullopt;
}

const BlockEdge& edge_for_bit(Vertex v, int bit) {
  for (const auto& e : block_edges()) {
    if (e.from == v && e.bit == bit) return e;
  }
  throw Error(ErrorCode::InternalInvariant, "no edge for bit");
}

std::string vertex_name(Vertex v) {
  switch (v) {
    case Vertex::Start:
      return "Start";
    case Vertex::A:
      return "A";
    case Vertex::B:
      return "B";
  }
  return "?";
}

// Walks blocks from vertex v, appending edges; returns the final vertex.
Vertex walk(const Blocks& blocks, Vertex v, const Word& w, std::size_t from_block, BlockParse& out) {
  const std::size_t len = blocks.words[0].size();
  for (std::size_t i = from_block; i * len < w.size(); ++i) {
    const Word block = w.substr(i * len, len);
    const auto e = edge_for_block(blocks, v, block);
    if (!e) {
      throw Error(ErrorCode::NotInXa, "block " + std::to_string(i + 1) + " (" + block.str() + ") of " + w.str() +
                                          " has no edge from vertex " + vertex_name(v));
    }
    out.path.push_back(e->id);
    out.blocks.push_back(e->label);
    v = e->to;
  }
  return v;
}

// The vertex reached after the first block, chosen by which label it matches.
BlockEdge first_edge(const FundamentalWord& a, const Blocks& blocks, const Word& first) {
  if (first == blocks.of(BlockLabel::Plus)) return block_edges()[0];
  if (first == blocks.of(BlockLabel::ReflectedPlus)) return block_edges()[1];
  const bool self_reflective = blocks.of(BlockLabel::Plain) == blocks.of(BlockLabel::Reflected);
  if (first == blocks.of(BlockLabel::Plain) || first == blocks.of(BlockLabel::Reflected)) {
    if (self_reflective) {
      throw Error(ErrorCode::AmbiguousStart, a.str() + " equals its reflection, so a leading " + first.str() +
                                                 " does not determine a vertex");
    }
    return first == blocks.of(BlockLabel::Plain) ? block_edges()[2] : block_edges()[4];
  }
  throw Error(ErrorCode::NotInXa, "first block " + first.str() + " is not a block of " + a.str());
}

}  // namespace

BlockParse parse_blocks(const FundamentalWord& a, const Word& w) {
  if (w.alphabet() != a.alphabet()) throw Error(ErrorCode::InvalidArgument, "alphabet mismatch");
  if (w.empty() || w.size() % a.size() != 0) {
    throw Error(ErrorCode::NotInXa, "length " + std::to_string(w.size()) + " is not a positive multiple of " +
                                        std::to_string(a.size()));
  }
  const Blocks blocks(a);
  const BlockEdge e = first_edge(a, blocks, w.substr(0, a.size()));
  BlockParse out;
  out.path.push_back(e.id);
  out.blocks.push_back(e.label);
  walk(blocks, e.to, w, 1, out);
  return out;
}

Word phi(const FundamentalWord& a, const Word& w) {
  const BlockParse p = parse_blocks(a, w);
  Word out(Alphabet(1));
  for (int id : p.path) out.push_back(block_edges()[id].bit);
  return out;
}

Word phi_inverse(const FundamentalWord& a, const Word& b) {
  if (b.alphabet().M() != 1) throw Error(ErrorCode::InvalidArgument, "phi_inverse takes a word over {0,1}");
  if (b.empty() || b[0] != 1) throw Error(ErrorCode::BadStart, "'" + b.str() + "' must begin with 1");
  const Blocks blocks(a);
  Word out(a.alphabet());
  Vertex v = Vertex::Start;
  for (Digit bit : b.digits()) {
    const BlockEdge& e = edge_for_bit(v, bit);
    out.append(blocks.of(e.label));
    v = e.to;
  }
  return out;
}

FundamentalWord compose(const FundamentalWord& a, const FundamentalWord& b) {
  if (b.alphabet().M() != 1) {
    throw Error(ErrorCode::InvalidArgument, "the right factor of a composition must be over {0,1}");
  }
  auto c = FundamentalWord::try_make(phi_inverse(a, b.word()));
  if (!c) {
    throw Error(ErrorCode::InternalInvariant, a.str() + " o " + b.str() + " is not fundamental");
  }
  return *c;
}

FundamentalWord Decomposition::recompose() const {
  if (tail.empty()) return head;
  // Composition is associative, so fold from the right over {0,1} first.
  FundamentalWord right = tail.back();
  for (std::size_t i = tail.size() - 1; i-- > 0;) right = compose(tail[i], right);
  return compose(head, right);
}

std::vector<std::string> Decomposition::strings() const {
  std::vector<std::string> out{head.str()};
  for (const auto& t : tail) out.push_back(t.str());
  return out;
}

namespace {

// Smallest proper head of c, with the image phi(head, c).
std::optional<std::pair<FundamentalWord, FundamentalWord>> split_head(const FundamentalWord& c) {
  const std::size_t n = c.size();
  const std::size_t min_len = c.alphabet().M() == 1 ? 2 : 1;
  for (std::size_t d = min_len; d < n; ++d) {
    if (n % d != 0) continue;
    const Word prefix = c.word().substr(0, d);
    if (prefix.back() == 0) continue;
    auto a = FundamentalWord::try_make(decrement_last(prefix));
    if (!a) continue;
    try {
      auto b = FundamentalWord::try_make(phi(*a, c.word()));
      if (b) return std::make_pair(std::move(*a), std::move(*b));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInXa && e.code() != ErrorCode::AmbiguousStart) throw;
    }
  }
  return std::nullopt;
}

}  // namespace

Decomposition decompose(const FundamentalWord& c) {
  auto split = split_head(c);
  if (!split) return Decomposition{c, {}};
  Decomposition rest = decompose(split->second);
  Decomposition out{split->first, {rest.head}};
  out.tail.insert(out.tail.end(), rest.tail.begin(), rest.tail.end());
  return out;
}

std::string Classification::str() const {
  switch (kind) {
    case Kind::Irreducible:
      return "irreducible";
    case Kind::NIrreducible:
      return std::to_string(n) + "-irreducible";
    case Kind::Reducible:
      return "reducible";
  }
  return "?";
}

Classification classify(const Decomposition& d) {
  using K = Classification::Kind;
  if (d.tail.empty()) return {K::Irreducible};
  if (d.head != unit_lift(d.head.alphabet())) return {K::Reducible};
  const Word ten(Alphabet(1), {1, 0});
  for (std::size_t i = 0; i + 1 < d.tail.size(); ++i) {
    if (d.tail[i].word() != ten) return {K::Reducible};
  }
  return {K::NIrreducible, static_cast<unsigned>(d.tail.size())};
}

Classification classify(const FundamentalWord& c) { return classify(decompose(c)); }

FundamentalWord unit_lift(Alphabet alphabet) {
  const int M = alphabet.M();
  const int k = M / 2;
  if (M % 2 == 0) return FundamentalWord(Word(alphabet, {k}));
  return FundamentalWord(Word(alphabet, {k + 1, k}));
}

BaseEnclosure phi_hat(const FundamentalWord& a, const BaseEnclosure& q, const Rational& tol) {
  if (q.alphabet() != a.alphabet()) throw Error(ErrorCode::InvalidArgument, "alphabet mismatch");
  const auto& alpha = q.defining_alpha();
  if (!alpha) {
    throw Error(ErrorCode::InvalidArgument, "phi_hat needs a base given by an eventually periodic alpha");
  }
  const std::size_t len = a.size();
  const EpSequence left = EpSequence::periodic(a.word());
  const EpSequence right(increment_last(a.word()), reflect(a.word()));
  if (lex_compare(*alpha, left) <= 0 || lex_compare(*alpha, right) > 0) {
    throw Error(ErrorCode::NotInXa, "alpha(q) = " + alpha->str() + " lies outside the interval of " + a.str());
  }

  // Re-cut alpha so the preperiod and period are whole blocks.
  const std::size_t pre = (alpha->preperiod().size() + len - 1) / len * len;
  const std::size_t per = std::lcm(alpha->period().size(), len);
  const Blocks blocks(a);
  BlockParse parse;
  const Word head = alpha->prefix(pre + per);
  if (head.substr(0, len) != blocks.of(BlockLabel::Plus)) {
    throw Error(ErrorCode::NotInXa, "alpha(q) does not start with " + blocks.of(BlockLabel::Plus).str());
  }
  Vertex v = walk(blocks, Vertex::Start, head.substr(0, pre), 0, parse);
  const Word period = head.substr(pre, per);

  // The period boundary vertex is A or B, so a cycle closes within three rounds.
  std::map<Vertex, std::size_t> seen;
  while (!seen.contains(v)) {
    seen[v] = parse.path.size();
    v = walk(blocks, v, period, 0, parse);
  }
  const std::size_t cycle_start = seen[v];
  Word bits(Alphabet(1));
  for (int id : parse.path) bits.push_back(block_edges()[id].bit);
  const EpSequence image(bits.substr(0, cycle_start), bits.substr(cycle_start));
  return base_from_alpha(image, tol);
}

BaseEnclosure de_vries_komornik(const FundamentalWord& a, const Rational& tol) {
  const std::size_t len = a.size();
  auto prefix = [&a, len](std::size_t n) {
    return phi_inverse(a, thue_morse((n + len - 1) / len)).substr(0, n);
  };
  return base_from_digit_source(a.alphabet(), prefix, tol);
}

}  // namespace qexp
