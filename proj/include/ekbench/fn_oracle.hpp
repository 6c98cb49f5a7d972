#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ekbench/ifs.hpp"
#include "ekbench/interval_cover.hpp"

namespace ekbench {

enum class TupleStatus { COVERED, DISJOINT_CERTIFIED, UNKNOWN };

// Verdict on whether one translate of the attractor covers a tuple.
// COVERED carries an exactly verified translate; DISJOINT_CERTIFIED is
// sound through the outer covers; UNKNOWN refuses to guess.
struct TupleVerdict {
  TupleStatus status = TupleStatus::UNKNOWN;
  std::optional<Rat> witness;
  int depth = 0;
};

const char* tuple_status_name(TupleStatus s);

// Tests whether some t puts every x_i into K' + t, via the common
// translate set: the tuple is coverable iff the sets x_i - K' share a
// point.  Empty intersection of the depth-d outer covers certifies
// DISJOINT; otherwise candidate translates (0 first, then x_i minus a
// cover endpoint, ascending by |t| then t) are verified by exact digit
// descent, and COVERED is reported only on full verification.
TupleVerdict fn_membership(const std::vector<Rat>& xs, const SimilarIfs& kprime, int depth);

// Certifies that no tuple drawn one coordinate per I_i ∩ P is coverable
// by one translate of the attractor: true iff the covers
// (I_i ∩ P) - K' have empty common intersection at the given depth.
// A true verdict is sound for the exact sets.
bool product_avoids_fn(const std::vector<Interval>& is, const IntervalCover& p,
                       const SimilarIfs& kprime, int depth);

// The common translate cover itself (intersection of x_i minus the
// depth-d attractor cover); empty means the tuple is certifiably
// outside the coverable set.
IntervalCover common_translate_cover(const std::vector<Rat>& xs, const SimilarIfs& kprime,
                                     int depth);

}  // namespace ekbench
