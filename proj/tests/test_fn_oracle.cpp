#include <doctest.h>

#include <vector>

#include "ekbench/fn_oracle.hpp"
#include "ekbench/ifs.hpp"

using namespace ekbench;

namespace {

SimilarIfs kprime() { return SimilarIfs::base_digits(10, {0, 5}); }

}  // namespace

TEST_CASE("a tuple of attractor members is covered with a verified translate") {
  TupleVerdict v = fn_membership({Rat(0), Rat(1, 2)}, kprime(), 6);
  CHECK(v.status == TupleStatus::COVERED);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == Rat(0));
  CHECK(ifs_member(kprime(), Rat(0) - *v.witness) == std::optional<bool>(true));
  CHECK(ifs_member(kprime(), Rat(1, 2) - *v.witness) == std::optional<bool>(true));
}

TEST_CASE("a shifted member pair is covered by some verified translate") {
  Rat t(1, 3);
  TupleVerdict v = fn_membership({t, Rat(1, 2) + t}, kprime(), 6);
  CHECK(v.status == TupleStatus::COVERED);
  REQUIRE(v.witness.has_value());
  CHECK(ifs_member(kprime(), t - *v.witness) == std::optional<bool>(true));
  CHECK(ifs_member(kprime(), Rat(1, 2) + t - *v.witness) == std::optional<bool>(true));
}

TEST_CASE("an impossible spacing is certified disjoint at modest depth") {
  TupleVerdict v = fn_membership({Rat(0), Rat(1, 3)}, kprime(), 6);
  CHECK(v.status == TupleStatus::DISJOINT_CERTIFIED);
  CHECK_FALSE(v.witness.has_value());
  CHECK(common_translate_cover({Rat(0), Rat(1, 3)}, kprime(), 6).empty());
}

TEST_CASE("shallow depth refuses to guess") {
  TupleVerdict v = fn_membership({Rat(0), Rat(1, 3)}, kprime(), 0);
  CHECK(v.status == TupleStatus::UNKNOWN);
  CHECK_FALSE(common_translate_cover({Rat(0), Rat(1, 3)}, kprime(), 0).empty());
}

TEST_CASE("the common translate cover contains every verified witness") {
  IntervalCover c = common_translate_cover({Rat(0), Rat(1, 2)}, kprime(), 5);
  CHECK_FALSE(c.empty());
  CHECK(c.contains(Rat(0)));
  IntervalCover shifted = common_translate_cover({Rat(1, 3), Rat(1, 2) + Rat(1, 3)}, kprime(), 5);
  CHECK(shifted.contains(Rat(1, 3)));
}

TEST_CASE("status names are stable") {
  CHECK(std::string(tuple_status_name(TupleStatus::COVERED)) == "COVERED");
  CHECK(std::string(tuple_status_name(TupleStatus::DISJOINT_CERTIFIED)) == "DISJOINT_CERTIFIED");
  CHECK(std::string(tuple_status_name(TupleStatus::UNKNOWN)) == "UNKNOWN");
}

TEST_CASE("product avoidance certifies safe interval pairs") {
  IntervalCover p({{Rat(0), Rat(1)}});
  std::vector<Interval> good{{Rat(0), Rat(3, 64)}, {Rat(5, 8), Rat(43, 64)}};
  CHECK(product_avoids_fn(good, p, kprime(), 6));

  // (0, 1/2) is a coverable tuple drawn from these intervals, so no depth
  // can certify avoidance.
  std::vector<Interval> bad{{Rat(0), Rat(1, 100)}, {Rat(1, 2), Rat(51, 100)}};
  CHECK_FALSE(product_avoids_fn(bad, p, kprime(), 4));
  CHECK_FALSE(product_avoids_fn(bad, p, kprime(), 8));
}

TEST_CASE("product avoidance only sees the P portion of each interval") {
  // The intervals themselves are dangerous, but P cuts the second one
  // down to a region with no coverable partner.
  IntervalCover p({{Rat(0), Rat(1, 100)}, {Rat(52, 100), Rat(53, 100)}});
  std::vector<Interval> is{{Rat(0), Rat(1, 100)}, {Rat(1, 2), Rat(53, 100)}};
  CHECK(product_avoids_fn(is, p, kprime(), 6));
}

TEST_CASE("single-coordinate tuples reduce to translate membership") {
  TupleVerdict v = fn_membership({Rat(7)}, kprime(), 4);
  CHECK(v.status == TupleStatus::COVERED);
  REQUIRE(v.witness.has_value());
  CHECK(ifs_member(kprime(), Rat(7) - *v.witness) == std::optional<bool>(true));
}
