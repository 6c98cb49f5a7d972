#pragma once

#include "ekbench/ifs.hpp"
#include "ekbench/rational.hpp"

namespace ekbench {

enum class DimMethod { SIMILARITY, BOX_FIT };

struct DimensionEstimate {
  double value = 0.0;
  DimMethod method = DimMethod::SIMILARITY;
  double residual = 0.0;  // RMS deviation of the fit; 0 for SIMILARITY
};

// The unique s >= 0 with sum ratio_i^s = 1: closed form log m / log(1/r)
// when all ratios equal r, monotone bisection to 1e-12 otherwise.
// Requires the non-overlap flag; throws OVERLAPPING_IFS without it.
DimensionEstimate similarity_dimension(const SimilarIfs& ifs);

// Least-squares slope of log(boxes hit) against log(1/side) where the
// depth-d cover is counted against half-open grid boxes of side
// (max ratio)^d, over depths [depth_lo, depth_hi].
DimensionEstimate box_dimension_fit(const SimilarIfs& ifs, int depth_lo, int depth_hi);

// Exact count of half-open grid boxes [j*side, (j+1)*side) meeting the
// cover's closed intervals.
long box_count(const IntervalCover& cover, const Rat& side);

struct ChooseN {
  int n;
  Rat certificate;  // n*dimUpper + 1, strictly below n by construction
};

// Smallest integer strictly greater than 1/(1 - dimUpper); exact
// rational arithmetic so boundary cases never misround.
// Throws DIM_TOO_LARGE when dimUpper >= 1 (or < 0).
ChooseN choose_N(const Rat& dim_upper);

}  // namespace ekbench
