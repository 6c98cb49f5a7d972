#include <doctest.h>

#include <vector>

#include "ekbench/error.hpp"
#include "ekbench/interval_cover.hpp"

using namespace ekbench;

namespace {

IntervalCover cover(std::initializer_list<std::pair<const char*, const char*>> ivs) {
  std::vector<Interval> raw;
  for (const auto& [lo, hi] : ivs) raw.push_back({parse_rat(lo), parse_rat(hi)});
  return IntervalCover(std::move(raw));
}

}  // namespace

TEST_CASE("construction sorts, merges overlaps and touching intervals") {
  IntervalCover c = cover({{"1/2", "3/4"}, {"0", "1/4"}, {"1/4", "2/5"}, {"7/10", "4/5"}});
  REQUIRE(c.size() == 2);
  CHECK(c.intervals()[0].lo == Rat(0));
  CHECK(c.intervals()[0].hi == Rat(2, 5));
  CHECK(c.intervals()[1].lo == Rat(1, 2));
  CHECK(c.intervals()[1].hi == Rat(4, 5));
  CHECK(c.total_length() == Rat(2, 5) + Rat(3, 10));
  REQUIRE(c.hull().has_value());
  CHECK(c.hull()->lo == Rat(0));
  CHECK(c.hull()->hi == Rat(4, 5));
}

TEST_CASE("degenerate and empty covers") {
  IntervalCover pt = IntervalCover::point(Rat(1, 3));
  CHECK(pt.size() == 1);
  CHECK(pt.total_length() == Rat(0));
  CHECK(pt.contains(Rat(1, 3)));
  CHECK_FALSE(pt.contains(Rat(1, 2)));

  IntervalCover none;
  CHECK(none.empty());
  CHECK(none.total_length() == Rat(0));
  CHECK_FALSE(none.hull().has_value());
  CHECK_THROWS_AS(IntervalCover({Interval{Rat(1), Rat(0)}}), Error);
}

TEST_CASE("membership includes closed endpoints") {
  IntervalCover c = cover({{"0", "1/2"}});
  CHECK(c.contains(Rat(0)));
  CHECK(c.contains(Rat(1, 2)));
  CHECK(c.contains(Rat(1, 4)));
  CHECK_FALSE(c.contains(Rat(3, 4)));
  CHECK_FALSE(c.contains(Rat(-1, 100)));
}

TEST_CASE("intersection against covers and windows") {
  IntervalCover a = cover({{"0", "1/2"}, {"3/4", "1"}});
  IntervalCover b = cover({{"1/4", "4/5"}});
  IntervalCover both = a.intersect(b);
  REQUIRE(both.size() == 2);
  CHECK(both.intervals()[0].lo == Rat(1, 4));
  CHECK(both.intervals()[0].hi == Rat(1, 2));
  CHECK(both.intervals()[1].lo == Rat(3, 4));
  CHECK(both.intervals()[1].hi == Rat(4, 5));
  CHECK(a.intersect(Interval{Rat(2), Rat(3)}).empty());
  // A window touching only at an endpoint yields that point.
  IntervalCover touch = a.intersect(Interval{Rat(1, 2), Rat(3, 5)});
  REQUIRE(touch.size() == 1);
  CHECK(touch.intervals()[0].lo == Rat(1, 2));
  CHECK(touch.intervals()[0].hi == Rat(1, 2));
}

TEST_CASE("disjointness counts shared endpoints as contact") {
  IntervalCover a = cover({{"0", "1/2"}});
  CHECK(a.disjoint_from(cover({{"3/5", "1"}})));
  CHECK_FALSE(a.disjoint_from(cover({{"1/2", "1"}})));
  CHECK_FALSE(a.disjoint_from(cover({{"1/4", "2/5"}})));
  CHECK(a.disjoint_from(IntervalCover{}));
}

TEST_CASE("minkowski sum and difference are exact on the pieces") {
  IntervalCover a = cover({{"0", "1/10"}, {"1/2", "3/5"}});
  IntervalCover b = cover({{"0", "1/10"}});
  IntervalCover sum = minkowski(a, MinkOp::SUM, b);
  REQUIRE(sum.size() == 2);
  CHECK(sum.intervals()[0].lo == Rat(0));
  CHECK(sum.intervals()[0].hi == Rat(1, 5));
  CHECK(sum.intervals()[1].lo == Rat(1, 2));
  CHECK(sum.intervals()[1].hi == Rat(7, 10));

  IntervalCover diff = minkowski(a, MinkOp::DIFF, a);
  // Differences: [-1/10,1/10] from matching pieces, [2/5,3/5] and its
  // mirror from the mixed pairs; all three merged and exact.
  REQUIRE(diff.size() == 3);
  CHECK(diff.intervals()[0].lo == Rat(-3, 5));
  CHECK(diff.intervals()[0].hi == Rat(-2, 5));
  CHECK(diff.intervals()[1].lo == Rat(-1, 10));
  CHECK(diff.intervals()[1].hi == Rat(1, 10));
  CHECK(diff.intervals()[2].lo == Rat(2, 5));
  CHECK(diff.intervals()[2].hi == Rat(3, 5));
  CHECK(diff.contains(Rat(1, 2)));
  CHECK_FALSE(diff.contains(Rat(1, 4)));
}

TEST_CASE("minkowski soundness spot checks") {
  IntervalCover a = cover({{"1/7", "1/3"}, {"2", "9/4"}});
  IntervalCover b = cover({{"-1/2", "-1/3"}, {"5", "11/2"}});
  IntervalCover sum = minkowski(a, MinkOp::SUM, b);
  IntervalCover diff = minkowski(a, MinkOp::DIFF, b);
  for (const Interval& ia : a.intervals())
    for (const Interval& ib : b.intervals()) {
      CHECK(sum.contains(ia.lo + ib.lo));
      CHECK(sum.contains(ia.hi + ib.hi));
      CHECK(sum.contains((ia.lo + ia.hi) / 2 + ib.lo));
      CHECK(diff.contains(ia.lo - ib.hi));
      CHECK(diff.contains(ia.hi - ib.lo));
    }
}

TEST_CASE("minkowski pair budget throws") {
  std::vector<Interval> many;
  for (int i = 0; i < 40; ++i) many.push_back({Rat(10 * i), Rat(10 * i) + 1});
  IntervalCover a(many);
  CHECK_THROWS_AS(minkowski(a, MinkOp::SUM, a, 100), Error);
  try {
    minkowski(a, MinkOp::SUM, a, 100);
  } catch (const Error& e) {
    CHECK(e.code() == errc::budget_exceeded);
  }
}

TEST_CASE("translate shifts and negate mirrors") {
  IntervalCover a = cover({{"0", "1/4"}, {"1/2", "1"}});
  IntervalCover moved = translate(a, Rat(3));
  CHECK(moved.intervals()[0].lo == Rat(3));
  CHECK(moved.intervals()[1].hi == Rat(4));
  IntervalCover neg = negate(a);
  REQUIRE(neg.size() == 2);
  CHECK(neg.intervals()[0].lo == Rat(-1));
  CHECK(neg.intervals()[0].hi == Rat(-1, 2));
  CHECK(neg.intervals()[1].lo == Rat(-1, 4));
  CHECK(neg.intervals()[1].hi == Rat(0));
  CHECK(negate(negate(a)).str() == a.str());
}

TEST_CASE("interval text forms") {
  CHECK(interval_str(Interval{Rat(0), Rat(1, 3)}) == "[0,1/3]");
  IntervalCover c = cover({{"0", "1/4"}, {"1/2", "1"}});
  CHECK(c.str() == "{[0,1/4],[1/2,1]}");
}
