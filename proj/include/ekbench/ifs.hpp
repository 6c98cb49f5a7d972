#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ekbench/interval_cover.hpp"
#include "ekbench/rational.hpp"

namespace ekbench {

// One contraction x -> ratio*x + offset with 0 < ratio < 1.
struct SimilarMap {
  Rat ratio;
  Rat offset;
};

// Iterated function system of similarity contractions on the line.
class SimilarIfs {
 public:
  explicit SimilarIfs(std::vector<SimilarMap> maps);

  const std::vector<SimilarMap>& maps() const { return maps_; }
  std::size_t map_count() const { return maps_.size(); }

  // Smallest closed interval that every map sends into itself: it spans
  // the fixed points offset/(1-ratio) and so contains the attractor.
  const Interval& bounding() const { return bounding_; }

  Rat apply(std::size_t i, const Rat& x) const;
  Interval image(std::size_t i, const Interval& iv) const;

  // True when the images of the bounding interval under distinct maps
  // have pairwise disjoint interiors (touching endpoints allowed).
  bool non_overlapping() const { return non_overlapping_; }

  // Text form "ratio,offset;ratio,offset;..." with exact rationals.
  static SimilarIfs parse(const std::string& text);
  std::string str() const;

  // Base-b digit set: maps x/b + d/b for each digit d.
  static SimilarIfs base_digits(int base, const std::vector<int>& digits);
  // Middle-alpha Cantor set: two maps of ratio (1-alpha)/2 on [0,1].
  static SimilarIfs middle(const Rat& alpha);

 private:
  std::vector<SimilarMap> maps_;
  Interval bounding_;
  bool non_overlapping_ = false;
};

// Union of all depth-fold compositions applied to the bounding interval;
// nested decreasing in depth and always containing the attractor.
// Throws BUDGET_EXCEEDED when the interval count would pass the cap.
IntervalCover attractor_cover(const SimilarIfs& ifs, int depth,
                              std::size_t interval_cap = 2'000'000);

// Exact attractor membership by digit descent: x is a member iff some
// preimage chain stays inside the bounding interval forever, which for
// rationals shows up as a repeated value.  nullopt when the chain count
// exceeds the budget before either certifying or exhausting.
std::optional<bool> ifs_member(const SimilarIfs& ifs, const Rat& x,
                               std::size_t node_budget = 65536);

}  // namespace ekbench
