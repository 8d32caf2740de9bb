#pragma once

// Fundamental intervals as entropy plateaus: enumeration by word length,
// placement on the ladder I_n, the entropy bridge, and staircase sampling.

#include <optional>
#include <string>
#include <vector>

#include "qexp/composition.hpp"
#include "qexp/subshift.hpp"

namespace qexp {

/// All fundamental words of length <= max_len, ordered by a^infinity.
std::vector<FundamentalWord> enumerate_fundamental(Alphabet alphabet, std::size_t max_len);

/// I_n = (q'_{n+1}, q'_n], with q'_0 = M + 1.
struct LadderRung {
  unsigned n;
  BaseEnclosure lower;  // q'_{n+1}
  BaseEnclosure upper;  // q'_n
};

std::vector<LadderRung> ladder(Alphabet alphabet, unsigned n_max, const Rational& tol = default_tolerance());

struct PlateauRecord {
  FundamentalWord word;
  BaseEnclosure q_left;
  BaseEnclosure q_right;
  EntropyEnclosure entropy;        // at q_L
  EntropyEnclosure entropy_right;  // at q_R
  Classification kind;
  std::optional<unsigned> ladder_index;  // none for the intervals ending at some q'_n
  bool is_plateau;
  bool placement_certified;
};

struct PlateauOptions {
  std::optional<RationalInterval> region;
  Rational tol = default_tolerance();
  Rational entropy_tol = default_entropy_tolerance();
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Irreducible and n-irreducible intervals generated by words of length <= max_len.
std::vector<PlateauRecord> enumerate_plateaus(Alphabet alphabet, std::size_t max_len, const PlateauOptions& options = {});

/// c_M: 1 for even M, 1/2 for odd M.
Rational bridge_factor(Alphabet alphabet);

struct BridgeReport {
  BaseEnclosure q;
  BaseEnclosure q_hat;         // phi_hat(u, q) over {0,1}
  EntropyEnclosure direct;     // H(q)
  EntropyEnclosure image;      // H*(q_hat)
  RationalInterval scaled;     // c_M H*(q_hat)
  bool agree;
};

/// Compares H(q) with c_M H*(phi_hat(u, q)) for q given by an eventually periodic alpha in (q_G, q_T].
BridgeReport verify_entropy_bridge(const FundamentalWord& u, const BaseEnclosure& q,
                                   const Rational& tol = default_entropy_tolerance());

struct StaircaseRow {
  enum class Status { Ok, Precision, Nonmonotone };
  BaseEnclosure q;
  std::optional<EntropyEnclosure> h;
  std::optional<RationalInterval> dim;
  Status status;
};

std::string to_string(StaircaseRow::Status s);

/// One row per grid point, in q order. Lower bounds are sharpened by the
/// entropy of any given plateau whose left endpoint is certified <= q.
std::vector<StaircaseRow> staircase(Alphabet alphabet, std::vector<BaseEnclosure> grid, std::size_t depth,
                                    const std::vector<PlateauRecord>& plateaus = {},
                                    const Rational& entropy_tol = default_entropy_tolerance());

}  // namespace qexp
