#include "ekbench/fn_oracle.hpp"

#include <algorithm>

#include "ekbench/error.hpp"

namespace ekbench {

const char* tuple_status_name(TupleStatus s) {
  switch (s) {
    case TupleStatus::COVERED: return "COVERED";
    case TupleStatus::DISJOINT_CERTIFIED: return "DISJOINT_CERTIFIED";
    case TupleStatus::UNKNOWN: return "UNKNOWN";
  }
  return "UNKNOWN";
}

IntervalCover common_translate_cover(const std::vector<Rat>& xs, const SimilarIfs& kprime,
                                     int depth) {
  IntervalCover kc = attractor_cover(kprime, depth);
  IntervalCover common;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    IntervalCover shifted = translate(negate(kc), xs[i]);  // x_i - K' cover
    common = (i == 0) ? shifted : common.intersect(shifted);
    if (common.empty()) break;
  }
  return common;
}

TupleVerdict fn_membership(const std::vector<Rat>& xs, const SimilarIfs& kprime, int depth) {
  if (xs.empty()) throw Error(errc::bad_input, "tuple must have at least one point");
  IntervalCover common = common_translate_cover(xs, kprime, depth);
  if (common.empty()) return {TupleStatus::DISJOINT_CERTIFIED, std::nullopt, depth};
  // Candidate translates with exactly checkable membership: cover
  // endpoints are attractor points (images of the bounding interval's
  // ends, which are fixed points), so x_i minus an endpoint is exact.
  // 0 is tried first so a tuple already inside K' reports witness 0.
  IntervalCover kc = attractor_cover(kprime, depth);
  std::vector<Rat> candidates;
  candidates.push_back(Rat(0));
  for (const Rat& x : xs) {
    for (const Interval& iv : kc.intervals()) {
      candidates.push_back(x - iv.lo);
      candidates.push_back(x - iv.hi);
    }
  }
  std::sort(candidates.begin() + 1, candidates.end(), [](const Rat& a, const Rat& b) {
    Rat aa = abs(a), ab = abs(b);
    if (aa != ab) return aa < ab;
    return a < b;
  });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Rat& t : candidates) {
    if (!common.contains(t)) continue;
    bool all = true;
    for (const Rat& x : xs) {
      if (ifs_member(kprime, x - t) != std::optional<bool>(true)) {
        all = false;
        break;
      }
    }
    if (all) return {TupleStatus::COVERED, t, depth};
  }
  return {TupleStatus::UNKNOWN, std::nullopt, depth};
}

bool product_avoids_fn(const std::vector<Interval>& is, const IntervalCover& p,
                       const SimilarIfs& kprime, int depth) {
  if (is.empty()) throw Error(errc::bad_input, "product needs at least one interval");
  IntervalCover kc = attractor_cover(kprime, depth);
  IntervalCover common;
  for (std::size_t i = 0; i < is.size(); ++i) {
    IntervalCover part = p.intersect(is[i]);
    if (part.empty()) return true;  // empty factor, nothing to cover
    IntervalCover shifted = minkowski(part, MinkOp::DIFF, kc);
    common = (i == 0) ? shifted : common.intersect(shifted);
    if (common.empty()) return true;
  }
  return common.empty();
}

}  // namespace ekbench
