#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ekbench/fn_oracle.hpp"
#include "ekbench/ifs.hpp"
#include "ekbench/interval_cover.hpp"

namespace ekbench {

// Nested levels of disjoint closed intervals: level k holds n^k
// intervals, each parent has exactly n children, every interval's
// interior meets the P cover, diameters shrink below 1/(k+1), and every
// n-tuple of distinct level-k intervals is certified unreachable by a
// single translate of the K' attractor.
struct CantorScheme {
  int n = 0;
  std::vector<std::vector<Interval>> levels;
  IntervalCover p;
  SimilarIfs kprime;
  std::vector<int> cert_depths;  // per level, cover depth certifying the tuple clause

  std::string to_json_text() const;
  static CantorScheme from_json_text(const std::string& text);
};

// Disjoint closed I_i inside J_i, interiors meeting P, with
// product_avoids_fn certified: scans candidate subinterval tuples in a
// fixed order (rounds deepen the cover depth by one and halve the
// candidate width; within a round, lexicographic over piece indices).
// Already-certified disjoint inputs return unchanged.  Throws
// RESOLUTION_EXHAUSTED when the budget runs out uncertified.
std::vector<Interval> shrink_step(const std::vector<Interval>& js, const IntervalCover& p,
                                  const SimilarIfs& kprime, int base_depth, int max_depth);

// Builds levels 0..target_depth, certifying every n-tuple of distinct
// same-level intervals via shrink_step sweeps (shrinking only ever
// shrinks, so certificates established earlier in a sweep survive).
// Refuses (BAD_INPUT) when n is below the choose_N threshold for K'.
CantorScheme build_scheme(const IntervalCover& p, const SimilarIfs& kprime, int n,
                          int target_depth, int max_cover_depth,
                          std::size_t tuple_cap = 200000);

struct ClauseResult {
  bool pass = false;
  std::string detail;
};

struct SchemeReport {
  bool pass = false;
  ClauseResult clauses[6];  // counts, nesting, branching, meets-P, diameters, tuples
};

// Replays all six structural clauses from the serialized scheme alone.
SchemeReport validate_scheme(const CantorScheme& s);

struct CellHit {
  std::size_t cell = 0;
  bool certified_miss = false;
  // A point of cell ∩ P lying in K' + r, verified by exact digit
  // descent; absence means only that the endpoint candidates failed.
  std::optional<Rat> exact_point;
};

struct HitReport {
  int possible_hits = 0;      // bottom cells not certified disjoint from K'+r
  int exact_hits = 0;         // cells with a verified exact point
  bool hard_invariant_ok = false;  // exact_hits < n
  int check_depth = 0;
  std::vector<CellHit> cells;
};

// Counts bottom-level cells whose P-portion is not certified disjoint
// from the translated attractor cover, with per-cell verdicts and the
// exact-witness cross-check.
HitReport translate_hit_count(const CantorScheme& s, const Rat& r, int check_depth);

}  // namespace ekbench
