#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ekbench/rational.hpp"

namespace ekbench {

// Closed interval [lo, hi] with exact rational endpoints; lo <= hi.
struct Interval {
  Rat lo;
  Rat hi;
};

bool interval_contains(const Interval& iv, const Rat& x);
// Closed intervals: a shared endpoint counts as overlap.
bool intervals_overlap(const Interval& a, const Interval& b);
std::string interval_str(const Interval& iv);

// Finite union of closed rational intervals kept sorted and pairwise
// disjoint; touching or overlapping inputs merge on construction, so
// equality of the interval lists is equality of the covered sets.
class IntervalCover {
 public:
  IntervalCover() = default;
  explicit IntervalCover(std::vector<Interval> raw);
  static IntervalCover point(const Rat& x);

  const std::vector<Interval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  std::size_t size() const { return iv_.size(); }
  bool contains(const Rat& x) const;
  Rat total_length() const;
  std::optional<Interval> hull() const;

  IntervalCover intersect(const IntervalCover& other) const;
  IntervalCover intersect(const Interval& window) const;
  bool disjoint_from(const IntervalCover& other) const;

  std::string str() const;

 private:
  std::vector<Interval> iv_;
};

enum class MinkOp { SUM, DIFF };

// Pairwise interval arithmetic, then canonicalization.  SUM covers
// A + B, DIFF covers A - B; both are outer approximations whenever the
// inputs are.  Throws BUDGET_EXCEEDED when the pair count passes the cap.
IntervalCover minkowski(const IntervalCover& a, MinkOp op, const IntervalCover& b,
                        std::size_t pair_cap = 20'000'000);

IntervalCover translate(const IntervalCover& a, const Rat& t);
IntervalCover negate(const IntervalCover& a);

}  // namespace ekbench
