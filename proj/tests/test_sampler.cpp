#include <doctest.h>

#include <cstddef>
#include <vector>

#include "ekbench/error.hpp"
#include "ekbench/prng.hpp"
#include "ekbench/sampler.hpp"

using namespace ekbench;

namespace {

SimilarIfs kprime() { return SimilarIfs::base_digits(10, {0, 5}); }

SampleSet coarse_sample() { return greedy_sample(kprime(), 6, IntervalCover(), Rat(1, 10), 2); }

}  // namespace

TEST_CASE("the coarse greedy run accepts a known point sequence") {
  SampleSet s = coarse_sample();
  std::vector<Rat> want{Rat(0), Rat(1, 10), Rat(1, 5), Rat(3, 10), Rat(2, 5), Rat(1)};
  std::vector<std::size_t> steps{0, 1, 2, 3, 4, 10};
  CHECK(s.points == want);
  CHECK(s.steps == steps);
  CHECK(s.depth == 2);
}

TEST_CASE("accepted differences dodge the self-difference cover") {
  SampleSet s = coarse_sample();
  IntervalCover cover = attractor_cover(s.kifs, s.depth);
  IntervalCover diff = minkowski(cover, MinkOp::DIFF, cover);
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::size_t j = i + 1; j < s.points.size(); ++j) {
      Rat d = s.points[j] - s.points[i];
      CHECK_FALSE(diff.contains(d));
      Rat nd = -d;
      CHECK_FALSE(diff.contains(nd));
    }
}

TEST_CASE("the exclusion cover blocks early grid points") {
  IntervalCover skip({{Rat(0), Rat(1, 20)}});
  SampleSet s = greedy_sample(kprime(), 3, skip, Rat(1, 10), 2);
  REQUIRE(s.points.size() == 3);
  CHECK(s.points[0] == Rat(1, 10));
  CHECK(s.steps[0] == 1);
}

TEST_CASE("a grid too coarse for the request exhausts") {
  try {
    greedy_sample(kprime(), 10, IntervalCover(), Rat(1, 4), 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::grid_exhausted);
  }
}

TEST_CASE("sampling rejects empty requests and degenerate grids") {
  CHECK_THROWS_AS(greedy_sample(kprime(), 0, IntervalCover(), Rat(1, 10), 2), Error);
  CHECK_THROWS_AS(greedy_sample(kprime(), 1, IntervalCover(), Rat(0), 2), Error);
}

TEST_CASE("translate hit counts match hand checks") {
  SampleSet s = coarse_sample();
  CHECK(verify_single_hit(s, Rat(1, 2), 2) == 1);   // 0 + 1/2 lands in the cover
  CHECK(verify_single_hit(s, Rat(0), 2) == 1);      // 0 itself is a member
  CHECK(verify_single_hit(s, Rat(-1), 2) == 1);     // 1 - 1 = 0
  CHECK(verify_single_hit(s, Rat(1, 3), 2) == 0);
  CHECK(verify_single_hit(s, Rat(1, 2), 1) <= 1);   // shallower check stays sound
  CHECK_THROWS_AS(verify_single_hit(s, Rat(0), 3), Error);
}

TEST_CASE("seeded translates never score two hits at the avoidance depth") {
  SampleSet s = coarse_sample();
  SplitMix64 rng(20240815);
  for (int i = 0; i < 200; ++i) {
    Rat t = rng.rat_between(Rat(-1), Rat(1), 10000);
    CHECK(verify_single_hit(s, t, 2) <= 1);
  }
}

TEST_CASE("sample json round-trips") {
  SampleSet s = coarse_sample();
  std::string text = s.to_json_text();
  SampleSet back = SampleSet::from_json_text(text);
  CHECK(back.to_json_text() == text);
  CHECK(back.points == s.points);
  CHECK(back.steps == s.steps);
  CHECK(back.depth == s.depth);
}

TEST_CASE("sample csv lists accepted points in order") {
  SampleSet s = coarse_sample();
  CHECK(s.to_csv() == "point,step\n0,0\n1/10,1\n1/5,2\n3/10,3\n2/5,4\n1,10\n");
}
