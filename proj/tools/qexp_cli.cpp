// Command-line front end: qexp <command> [options]. Exit codes: 0 success,
// 2 domain or usage error, 3 precision failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qexp/serialize.hpp"

namespace {

using namespace qexp;
using nlohmann::json;

constexpr int kDigits = 15;

struct Config {
  int M = 1;
  std::string precision = "2^-64";
  std::size_t depth = 30;
  std::size_t max_len = 8;
  std::string format = "plain";
  std::string out;

  Alphabet alphabet() const { return Alphabet(M); }
  Rational tol() const {
    if (precision.starts_with("2^-")) {
      const unsigned long k = std::stoul(precision.substr(3));
      if (k == 0 || k > 4096) throw Error(ErrorCode::InvalidArgument, "precision exponent out of range");
      return pow2_neg(static_cast<unsigned>(k));
    }
    const Rational t = parse_rational(precision);
    if (t <= 0) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    return t;
  }
};

std::string down(const Rational& x) { return to_decimal(x, kDigits, Rounding::Down); }
std::string up(const Rational& x) { return to_decimal(x, kDigits, Rounding::Up); }
std::string range(const Rational& lo, const Rational& hi) { return "[" + down(lo) + ", " + up(hi) + "]"; }

// A decimal or rational q becomes [q - tol, q + tol] clamped to (1, M+1].
BaseEnclosure base_from_text(const std::string& text, const Config& cfg) {
  const Rational x = parse_rational(text);
  const Rational top(cfg.M + 1);
  if (x <= 1 || x > top) throw Error(ErrorCode::InvalidArgument, "q must lie in (1, M+1]");
  const Rational t = cfg.tol();
  Rational lo = x - t;
  Rational hi = x + t;
  if (hi > top) hi = top;
  if (lo <= 1) throw Error(ErrorCode::InvalidArgument, "q is within the precision of 1");
  return BaseEnclosure(cfg.alphabet(), lo, hi);
}

std::string base_line(const std::string& name, const BaseEnclosure& q) {
  std::string s = name + " in " + range(q.lo(), q.hi());
  if (q.defining_alpha()) s += "  alpha=" + q.defining_alpha()->str();
  return s;
}

std::string entropy_line(const EntropyEnclosure& h) {
  std::string s = "h in " + range(h.lo, h.hi);
  if (h.exact_radius) s += "  (exact spectral radius " + to_string(*h.exact_radius) + ")";
  return s;
}

class Output {
 public:
  explicit Output(const Config& cfg) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot open " + cfg.out);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run_alpha(const Config& cfg, const std::string& q_text, const std::string& seq, std::size_t n) {
  Output out(cfg);
  if (!q_text.empty() == !seq.empty()) throw Error(ErrorCode::InvalidArgument, "give exactly one of --q or --seq");
  const BaseEnclosure q = seq.empty() ? base_from_text(q_text, cfg)
                                      : base_from_alpha(EpSequence::parse(seq, cfg.alphabet()), cfg.tol());
  const Word digits = alpha_digits(q, n);
  if (cfg.format == "json") {
    out.stream() << json{{"digits", digits.str()}, {"q", to_json(q)}}.dump() << "\n";
  } else {
    out.stream() << digits.str() << "\n";
    if (!seq.empty()) out.stream() << base_line("q", q) << "\n";
  }
  return 0;
}

int run_compose(const Config& cfg, const std::string& a, const std::string& b) {
  Output out(cfg);
  const FundamentalWord c = compose(FundamentalWord::parse(a, cfg.alphabet()), FundamentalWord::parse(b, Alphabet(1)));
  out.stream() << (cfg.format == "json" ? json(c.str()).dump() : c.str()) << "\n";
  return 0;
}

int run_decompose(const Config& cfg, const std::string& c) {
  Output out(cfg);
  out.stream() << to_json(decompose(FundamentalWord::parse(c, cfg.alphabet()))).dump() << "\n";
  return 0;
}

int run_classify(const Config& cfg, const std::string& c) {
  Output out(cfg);
  const Classification k = classify(FundamentalWord::parse(c, cfg.alphabet()));
  out.stream() << (cfg.format == "json" ? json(k.str()).dump() : k.str()) << "\n";
  return 0;
}

int run_plateaus(const Config& cfg, const std::string& from, const std::string& to) {
  Output out(cfg);
  PlateauOptions opts;
  opts.tol = cfg.tol();
  if (!from.empty() || !to.empty()) {
    opts.region = RationalInterval{from.empty() ? Rational(1) : parse_rational(from),
                                   to.empty() ? Rational(cfg.M + 1) : parse_rational(to)};
  }
  const auto records = enumerate_plateaus(cfg.alphabet(), cfg.max_len, opts);
  bool certified = true;
  for (const auto& r : records) certified = certified && r.placement_certified;
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    json meta{{"M", cfg.M},
              {"max_len", cfg.max_len},
              {"records", records.size()},
              {"completeness", "all plateaus generated by words of length <= " + std::to_string(cfg.max_len)}};
    os << json{{"meta", meta}}.dump() << "\n";
    for (const auto& r : records) os << to_json(r).dump() << "\n";
  } else if (cfg.format == "csv") {
    os << "word,class,ladder_index,plateau,qL_lo,qL_hi,qR_lo,qR_hi,h_lo,h_hi,certified\n";
    for (const auto& r : records) {
      os << r.word.str() << "," << r.kind.str() << "," << (r.ladder_index ? std::to_string(*r.ladder_index) : "")
         << "," << r.is_plateau << "," << down(r.q_left.lo()) << "," << up(r.q_left.hi()) << ","
         << down(r.q_right.lo()) << "," << up(r.q_right.hi()) << "," << down(r.entropy.lo) << ","
         << up(r.entropy.hi) << "," << r.placement_certified << "\n";
    }
  } else {
    os << "# all plateaus generated by words of length <= " << cfg.max_len << ", M = " << cfg.M << "\n";
    for (const auto& r : records) {
      os << r.word.str() << "  " << r.kind.str() << "  I_"
         << (r.ladder_index ? std::to_string(*r.ladder_index) : std::string("-")) << "  "
         << (r.is_plateau ? "plateau" : "not-a-plateau") << "  q_L " << range(r.q_left.lo(), r.q_left.hi())
         << "  q_R " << range(r.q_right.lo(), r.q_right.hi()) << "  h " << range(r.entropy.lo, r.entropy.hi)
         << "\n";
    }
  }
  if (!certified) {
    std::cerr << "placement of at least one interval could not be certified\n";
    return 3;
  }
  return 0;
}

int run_staircase(const Config& cfg, const std::string& from, const std::string& to, std::size_t steps) {
  Output out(cfg);
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "--steps must be at least 1");
  const Rational a = parse_rational(from);
  const Rational b = parse_rational(to);
  if (!(a <= b)) throw Error(ErrorCode::InvalidArgument, "--from must not exceed --to");
  std::vector<BaseEnclosure> grid;
  for (std::size_t i = 0; i <= steps; ++i) {
    const Rational x = a + (b - a) * Rational(static_cast<long>(i), static_cast<long>(steps));
    std::ostringstream text;
    text << x.get_str();
    grid.push_back(base_from_text(text.str(), cfg));
    if (a == b) break;
  }
  PlateauOptions opts;
  opts.tol = cfg.tol();
  const auto plateaus = enumerate_plateaus(cfg.alphabet(), cfg.max_len, opts);
  const auto rows = staircase(cfg.alphabet(), grid, cfg.depth, plateaus);
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    json all = json::array();
    for (const auto& r : rows) all.push_back(to_json(r));
    os << all.dump() << "\n";
  } else {
    // plain and csv coincide for the table
    os << "q_lo,q_hi,h_lo,h_hi,dim_lo,dim_hi,status\n";
    for (const auto& r : rows) {
      os << down(r.q.lo()) << "," << up(r.q.hi()) << ",";
      if (r.h) {
        os << down(r.h->lo) << "," << up(r.h->hi) << "," << down(r.dim->lo) << "," << up(r.dim->hi);
      } else {
        os << ",,,";
      }
      os << "," << to_string(r.status) << "\n";
    }
  }
  return 0;
}

int run_entropy(const Config& cfg, const std::string& seq, const std::string& q_text) {
  Output out(cfg);
  if (!q_text.empty() == !seq.empty()) throw Error(ErrorCode::InvalidArgument, "give exactly one of --q or --seq");
  BaseEnclosure q = seq.empty() ? base_from_text(q_text, cfg)
                                : base_from_alpha(EpSequence::parse(seq, cfg.alphabet()), cfg.tol());
  const EntropyEnclosure h = seq.empty() ? entropy_bounds_at(q, cfg.depth)
                                         : entropy(SubshiftAutomaton(*q.defining_alpha()));
  const RationalInterval dim = hausdorff_dimension(q, h);
  if (cfg.format == "json") {
    out.stream() << json{{"q", to_json(q)}, {"entropy", to_json(h)}, {"dimension", to_json(dim)}}.dump() << "\n";
  } else {
    out.stream() << base_line("q", q) << "\n" << entropy_line(h) << "\n"
                 << "dim in " << range(dim.lo, dim.hi) << "\n";
  }
  return 0;
}

int run_transitive(const Config& cfg, const std::string& seq) {
  Output out(cfg);
  const SubshiftAutomaton aut(EpSequence::parse(seq, cfg.alphabet()));
  const auto comps = essential_components(aut);
  std::vector<std::size_t> sizes;
  for (const auto& c : comps) sizes.push_back(c.size());
  const bool transitive = comps.size() == 1;
  if (cfg.format == "json") {
    out.stream() << json{{"transitive", transitive}, {"states", aut.size()}, {"component_sizes", sizes}}.dump()
                 << "\n";
  } else {
    out.stream() << "transitive: " << (transitive ? "true" : "false") << "\n";
    out.stream() << "states: " << aut.size() << ", essential components: " << json(sizes).dump() << "\n";
  }
  return 0;
}

int run_automaton(const Config& cfg, const std::string& seq) {
  Output out(cfg);
  out.stream() << to_json(SubshiftAutomaton(EpSequence::parse(seq, cfg.alphabet()))).dump() << "\n";
  return 0;
}

int run_bases(const Config& cfg, unsigned n) {
  Output out(cfg);
  const Alphabet a = cfg.alphabet();
  const Rational t = cfg.tol();
  std::vector<std::pair<std::string, BaseEnclosure>> rows{
      {"q_G", golden_base(a, t)}, {"q_KL", komornik_loreti_base(a, t)}, {"q_T", transitive_base(a, t)}};
  for (unsigned k = 1; k <= n; ++k) rows.emplace_back("q'_" + std::to_string(k), prime_base(a, k, t));
  if (cfg.format == "json") {
    json j = json::object();
    for (const auto& [name, q] : rows) j[name] = to_json(q);
    out.stream() << j.dump() << "\n";
  } else {
    for (const auto& [name, q] : rows) out.stream() << base_line(name, q) << "\n";
  }
  return 0;
}

int run_bridge(const Config& cfg, const std::string& seq) {
  Output out(cfg);
  const BaseEnclosure q = base_from_alpha(EpSequence::parse(seq, cfg.alphabet()), cfg.tol());
  const BridgeReport r = verify_entropy_bridge(unit_lift(cfg.alphabet()), q);
  if (cfg.format == "json") {
    out.stream() << to_json(r).dump() << "\n";
  } else {
    out.stream() << base_line("q", r.q) << "\n"
                 << base_line("q_hat", r.q_hat) << "\n"
                 << "H(q) in " << range(r.direct.lo, r.direct.hi) << "\n"
                 << "c_M H*(q_hat) in " << range(r.scaled.lo, r.scaled.hi) << "\n"
                 << "agree: " << (r.agree ? "true" : "false") << "\n";
  }
  return r.agree ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unique expansions in non-integer bases: fundamental words, plateaus and entropy"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--M", cfg.M, "largest digit")->check(CLI::Range(1, 1000));
  app.add_option("--precision", cfg.precision, "base enclosure width, rational, decimal or 2^-k");
  app.add_option("--depth", cfg.depth, "digits of alpha(q) used for entropy bounds")->check(CLI::Range(1, 100000));
  app.add_option("--max-len", cfg.max_len, "longest generating word")->check(CLI::Range(1, 24));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--out", cfg.out, "write output to FILE");

  std::string q_text, seq, word_a, word_b, from, to;
  std::size_t n = 12;
  std::size_t steps = 20;
  unsigned n_bases = 3;
  std::function<int()> action;

  auto* alpha = app.add_subcommand("alpha", "digits of the quasi-greedy expansion alpha(q)");
  alpha->add_option("--q", q_text, "base as decimal or p/q");
  alpha->add_option("--seq", seq, "alpha(q) as pre(period)");
  alpha->add_option("--n", n, "number of digits")->check(CLI::Range(1, 1000000));
  alpha->callback([&] { action = [&] { return run_alpha(cfg, q_text, seq, n); }; });

  auto* comp = app.add_subcommand("compose", "a o b, with b over {0,1}");
  comp->add_option("a", word_a)->required();
  comp->add_option("b", word_b)->required();
  comp->callback([&] { action = [&] { return run_compose(cfg, word_a, word_b); }; });

  auto* decomp = app.add_subcommand("decompose", "irreducible factors, head first");
  decomp->add_option("word", word_a)->required();
  decomp->callback([&] { action = [&] { return run_decompose(cfg, word_a); }; });

  auto* cls = app.add_subcommand("classify", "irreducible, n-irreducible or reducible");
  cls->add_option("word", word_a)->required();
  cls->callback([&] { action = [&] { return run_classify(cfg, word_a); }; });

  auto* plat = app.add_subcommand("plateaus", "irreducible and n-irreducible intervals up to --max-len");
  plat->add_option("--from", from, "left end of the base region");
  plat->add_option("--to", to, "right end of the base region");
  plat->callback([&] { action = [&] { return run_plateaus(cfg, from, to); }; });

  auto* stair = app.add_subcommand("staircase", "entropy and dimension bounds on a grid of bases");
  stair->add_option("--from", from)->required();
  stair->add_option("--to", to)->required();
  stair->add_option("--steps", steps, "grid intervals")->check(CLI::Range(1, 100000));
  stair->callback([&] { action = [&] { return run_staircase(cfg, from, to, steps); }; });

  auto* ent = app.add_subcommand("entropy", "entropy of V_q and dimension of the univoque set");
  ent->add_option("--seq", seq, "alpha(q) as pre(period)");
  ent->add_option("--q", q_text, "base as decimal or p/q (bounds from --depth digits)");
  ent->callback([&] { action = [&] { return run_entropy(cfg, seq, q_text); }; });

  auto* trans = app.add_subcommand("transitive", "transitivity of V_q");
  trans->add_option("--seq", seq, "alpha(q) as pre(period)")->required();
  trans->callback([&] { action = [&] { return run_transitive(cfg, seq); }; });

  auto* aut = app.add_subcommand("automaton", "JSON dump of the automaton presenting V_q");
  aut->add_option("--seq", seq, "alpha(q) as pre(period)")->required();
  aut->callback([&] { action = [&] { return run_automaton(cfg, seq); }; });

  auto* bases = app.add_subcommand("bases", "q_G, q_KL, q_T and q'_1 .. q'_n");
  bases->add_option("--n", n_bases)->check(CLI::Range(1, 16));
  bases->callback([&] { action = [&] { return run_bases(cfg, n_bases); }; });

  auto* bridge = app.add_subcommand("bridge", "compare H(q) with c_M H*(phi_hat(u, q))");
  bridge->add_option("--seq", seq, "alpha(q) as pre(period)")->required();
  bridge->callback([&] { action = [&] { return run_bridge(cfg, seq); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the domain-error exit code; --help still exits 0.
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::PrecisionExhausted ? 3 : 2;
  }
}
