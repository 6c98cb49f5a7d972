#include "ekbench/interval_cover.hpp"

#include <algorithm>

#include "ekbench/error.hpp"

namespace ekbench {

bool interval_contains(const Interval& iv, const Rat& x) {
  return iv.lo <= x && x <= iv.hi;
}

bool intervals_overlap(const Interval& a, const Interval& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

std::string interval_str(const Interval& iv) {
  return "[" + rat_str(iv.lo) + "," + rat_str(iv.hi) + "]";
}

IntervalCover::IntervalCover(std::vector<Interval> raw) {
  for (const Interval& iv : raw) {
    if (iv.hi < iv.lo) throw Error(errc::bad_input, "interval with hi < lo: " + interval_str(iv));
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  for (Interval& iv : raw) {
    if (!iv_.empty() && iv.lo <= iv_.back().hi) {
      if (iv.hi > iv_.back().hi) iv_.back().hi = std::move(iv.hi);
    } else {
      iv_.push_back(std::move(iv));
    }
  }
}

IntervalCover IntervalCover::point(const Rat& x) { return IntervalCover({{x, x}}); }

bool IntervalCover::contains(const Rat& x) const {
  // First interval whose upper end reaches x; disjointness makes it the
  // only candidate.
  auto it = std::partition_point(iv_.begin(), iv_.end(),
                                 [&](const Interval& iv) { return iv.hi < x; });
  return it != iv_.end() && it->lo <= x;
}

Rat IntervalCover::total_length() const {
  Rat sum(0);
  for (const Interval& iv : iv_) sum += iv.hi - iv.lo;
  sum.canonicalize();
  return sum;
}

std::optional<Interval> IntervalCover::hull() const {
  if (iv_.empty()) return std::nullopt;
  return Interval{iv_.front().lo, iv_.back().hi};
}

IntervalCover IntervalCover::intersect(const IntervalCover& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < iv_.size() && j < other.iv_.size()) {
    const Interval& a = iv_[i];
    const Interval& b = other.iv_[j];
    Rat lo = std::max(a.lo, b.lo);
    Rat hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalCover(std::move(out));
}

IntervalCover IntervalCover::intersect(const Interval& window) const {
  return intersect(IntervalCover({window}));
}

bool IntervalCover::disjoint_from(const IntervalCover& other) const {
  std::size_t i = 0, j = 0;
  while (i < iv_.size() && j < other.iv_.size()) {
    if (intervals_overlap(iv_[i], other.iv_[j])) return false;
    if (iv_[i].hi < other.iv_[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

std::string IntervalCover::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < iv_.size(); ++i) {
    if (i) out += ",";
    out += interval_str(iv_[i]);
  }
  out += "}";
  return out;
}

IntervalCover minkowski(const IntervalCover& a, MinkOp op, const IntervalCover& b,
                        std::size_t pair_cap) {
  if (a.size() * b.size() > pair_cap)
    throw Error(errc::budget_exceeded,
                "minkowski pair count " + std::to_string(a.size() * b.size()));
  std::vector<Interval> out;
  out.reserve(a.size() * b.size());
  for (const Interval& x : a.intervals()) {
    for (const Interval& y : b.intervals()) {
      if (op == MinkOp::SUM) {
        out.push_back({x.lo + y.lo, x.hi + y.hi});
      } else {
        out.push_back({x.lo - y.hi, x.hi - y.lo});
      }
    }
  }
  return IntervalCover(std::move(out));
}

IntervalCover translate(const IntervalCover& a, const Rat& t) {
  std::vector<Interval> out;
  out.reserve(a.size());
  for (const Interval& iv : a.intervals()) out.push_back({iv.lo + t, iv.hi + t});
  return IntervalCover(std::move(out));
}

IntervalCover negate(const IntervalCover& a) {
  std::vector<Interval> out;
  out.reserve(a.size());
  for (const Interval& iv : a.intervals()) out.push_back({-iv.hi, -iv.lo});
  return IntervalCover(std::move(out));
}

}  // namespace ekbench
