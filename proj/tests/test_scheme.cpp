#include <doctest.h>

#include <vector>

#include "ekbench/error.hpp"
#include "ekbench/scheme.hpp"

using namespace ekbench;

namespace {

IntervalCover unit() { return IntervalCover({{Rat(0), Rat(1)}}); }
SimilarIfs kprime() { return SimilarIfs::base_digits(10, {0, 5}); }

CantorScheme small_scheme() { return build_scheme(unit(), kprime(), 2, 2, 12); }

int clause_index(const char* name) {
  const char* names[] = {"counts", "nesting", "branching", "meets-P", "diameters", "tuples"};
  for (int i = 0; i < 6; ++i)
    if (std::string(names[i]) == name) return i;
  return -1;
}

}  // namespace

TEST_CASE("certified tuples pass through the shrinker unchanged") {
  std::vector<Interval> in{{Rat(0), Rat(3, 64)}, {Rat(5, 8), Rat(43, 64)}};
  REQUIRE(product_avoids_fn(in, unit(), kprime(), 4));
  std::vector<Interval> out = shrink_step(in, unit(), kprime(), 4, 12);
  REQUIRE(out.size() == 2);
  CHECK(out[0].lo == in[0].lo);
  CHECK(out[0].hi == in[0].hi);
  CHECK(out[1].lo == in[1].lo);
  CHECK(out[1].hi == in[1].hi);
}

TEST_CASE("a dangerous tuple shrinks to certified disjoint subintervals") {
  std::vector<Interval> in{{Rat(0), Rat(1, 4)}, {Rat(1, 2), Rat(3, 4)}};
  REQUIRE_FALSE(product_avoids_fn(in, unit(), kprime(), 4));
  std::vector<Interval> out = shrink_step(in, unit(), kprime(), 4, 12);
  REQUIRE(out.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(out[i].lo >= in[i].lo);
    CHECK(out[i].hi <= in[i].hi);
    CHECK(out[i].lo < out[i].hi);
  }
  CHECK_FALSE(intervals_overlap(out[0], out[1]));
  bool certified = false;
  for (int d = 4; d <= 12 && !certified; ++d)
    certified = product_avoids_fn(out, unit(), kprime(), d);
  CHECK(certified);
}

TEST_CASE("shrinking rejects intervals whose interior misses P") {
  std::vector<Interval> bad{{Rat(2), Rat(3)}, {Rat(0), Rat(1, 4)}};
  CHECK_THROWS_AS(shrink_step(bad, unit(), kprime(), 4, 8), Error);
  std::vector<Interval> degenerate{{Rat(0), Rat(0)}};
  CHECK_THROWS_AS(shrink_step(degenerate, unit(), kprime(), 4, 8), Error);
}

TEST_CASE("a too-small depth budget exhausts the shrinker") {
  // Subintervals of these two differ by roughly 1/2, and dodging the
  // difference set of the attractor near 1/2 needs finer candidates
  // than two halving rounds provide.
  std::vector<Interval> in{{Rat(0), Rat(1, 1000)}, {Rat(1, 2), Rat(501, 1000)}};
  try {
    shrink_step(in, unit(), kprime(), 4, 5);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::resolution_exhausted);
  }
}

TEST_CASE("scheme construction produces the declared shape") {
  CantorScheme s = small_scheme();
  CHECK(s.n == 2);
  REQUIRE(s.levels.size() == 3);
  CHECK(s.levels[0].size() == 1);
  CHECK(s.levels[1].size() == 2);
  CHECK(s.levels[2].size() == 4);
  CHECK(s.cert_depths.size() == 3);
  SchemeReport r = validate_scheme(s);
  CHECK(r.pass);
  for (int i = 0; i < 6; ++i) CHECK(r.clauses[i].pass);
}

TEST_CASE("scheme construction is deterministic") {
  CHECK(small_scheme().to_json_text() == small_scheme().to_json_text());
}

TEST_CASE("construction refuses branching below the dimension threshold") {
  CHECK_THROWS_AS(build_scheme(unit(), kprime(), 1, 2, 12), Error);
  // The middle-1/5 system has similarity dimension above 1/2, so two
  // branches are not enough for it.
  SimilarIfs thick = SimilarIfs::middle(Rat(1, 5));
  CHECK_THROWS_AS(build_scheme(unit(), thick, 2, 2, 12), Error);
}

TEST_CASE("validator flags a wrong level count") {
  CantorScheme s = small_scheme();
  s.levels.back().pop_back();
  SchemeReport r = validate_scheme(s);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.clauses[clause_index("counts")].pass);
}

TEST_CASE("validator flags a child outside every parent") {
  CantorScheme s = small_scheme();
  Interval parent0 = s.levels[1][0];
  Interval parent1 = s.levels[1][1];
  Rat gap_lo = parent0.hi + (parent1.lo - parent0.hi) / 3;
  Rat gap_hi = parent0.hi + (parent1.lo - parent0.hi) / 2;
  s.levels[2][0] = Interval{gap_lo, gap_hi};
  SchemeReport r = validate_scheme(s);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.clauses[clause_index("nesting")].pass);
}

TEST_CASE("validator flags uneven branching") {
  CantorScheme s = small_scheme();
  // Move one child of the second parent inside the first parent: cells
  // stay disjoint and nested, but the parents have 3 and 1 children.
  Interval parent0 = s.levels[1][0];
  Interval c1 = s.levels[2][1];
  REQUIRE(c1.hi < parent0.hi);
  Rat lo = c1.hi + (parent0.hi - c1.hi) / 2;
  s.levels[2][2] = Interval{lo, lo + (parent0.hi - c1.hi) / 4};
  SchemeReport r = validate_scheme(s);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.clauses[clause_index("branching")].pass);
}

TEST_CASE("validator flags an oversized cell") {
  CantorScheme s = small_scheme();
  s.levels[1][0] = Interval{Rat(0), Rat(3, 5)};  // above the 1/2 diameter bound
  SchemeReport r = validate_scheme(s);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.clauses[clause_index("diameters")].pass);
}

TEST_CASE("validator flags a coverable tuple") {
  CantorScheme s = small_scheme();
  s.levels[1][0] = Interval{Rat(0), Rat(1, 100)};
  s.levels[1][1] = Interval{Rat(1, 2), Rat(51, 100)};
  SchemeReport r = validate_scheme(s);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.clauses[clause_index("tuples")].pass);
}

TEST_CASE("scheme json round-trips") {
  CantorScheme s = small_scheme();
  std::string text = s.to_json_text();
  CantorScheme back = CantorScheme::from_json_text(text);
  CHECK(back.to_json_text() == text);
  CHECK(back.n == s.n);
  CHECK(back.cert_depths == s.cert_depths);
  CHECK_THROWS(CantorScheme::from_json_text("not json"));
}

TEST_CASE("translate hits are counted per bottom cell") {
  CantorScheme s = small_scheme();
  HitReport far = translate_hit_count(s, Rat(10), 4);
  CHECK(far.possible_hits == 0);
  CHECK(far.exact_hits == 0);
  CHECK(far.hard_invariant_ok);
  CHECK(far.cells.size() == s.levels.back().size());
  for (const CellHit& c : far.cells) CHECK(c.certified_miss);

  HitReport zero = translate_hit_count(s, Rat(0), 4);
  CHECK(zero.exact_hits <= zero.possible_hits);
  CHECK(zero.hard_invariant_ok);  // fewer than n = 2 exact hits
  for (const CellHit& c : zero.cells)
    if (c.exact_point) {
      Rat p = *c.exact_point;
      CHECK(interval_contains(s.levels.back()[c.cell], p));
      CHECK(ifs_member(s.kprime, p - Rat(0)) == std::optional<bool>(true));
    }
}
