#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ekbench/ifs.hpp"
#include "ekbench/interval_cover.hpp"
#include "ekbench/rational.hpp"

namespace ekbench {

// Greedily chosen points whose pairwise differences stay outside the
// depth-d difference cover of the attractor with itself; steps[i] is the
// grid index at which points[i] was accepted.
struct SampleSet {
  std::vector<Rat> points;
  std::vector<std::size_t> steps;
  int depth = 0;
  SimilarIfs kifs;
  IntervalCover exclusion;

  std::string to_json_text() const;
  static SampleSet from_json_text(const std::string& text);
  // Header "point,step" then one row per accepted point.
  std::string to_csv() const;
};

// Scans the grid 0, g, 2g, ... through 1 in order; accepts x when x lies
// outside the exclusion cover and, for every earlier accept y, both
// x - y and y - x lie outside the depth-d cover of K - K.  Stops after
// count accepts; throws GRID_EXHAUSTED when the grid ends first.
SampleSet greedy_sample(const SimilarIfs& k, std::size_t count, const IntervalCover& exclusion,
                        const Rat& grid_step, int depth);

// Counts members x of the sample with x + t inside the depth-d cover of
// the sample's attractor.  Requires depth <= the sample's avoidance
// depth (BAD_INPUT otherwise); at matched depth the count is at most 1,
// since two hits would place their difference inside the avoided cover.
int verify_single_hit(const SampleSet& x, const Rat& t, int depth);

}  // namespace ekbench
