#include "ekbench/sampler.hpp"

#include <json.hpp>

#include <utility>

#include "ekbench/error.hpp"

namespace ekbench {
namespace {

using njson = nlohmann::ordered_json;

njson cover_json(const IntervalCover& c) {
  njson a = njson::array();
  for (const Interval& iv : c.intervals()) a.push_back({rat_str(iv.lo), rat_str(iv.hi)});
  return a;
}

IntervalCover cover_from_json(const njson& a) {
  std::vector<Interval> raw;
  for (const auto& e : a)
    raw.push_back({parse_rat(e.at(0).get<std::string>()), parse_rat(e.at(1).get<std::string>())});
  return IntervalCover(std::move(raw));
}

}  // namespace

SampleSet greedy_sample(const SimilarIfs& k, std::size_t count, const IntervalCover& exclusion,
                        const Rat& grid_step, int depth) {
  if (count < 1) throw Error(errc::bad_input, "sample count must be at least 1");
  if (grid_step <= 0) throw Error(errc::bad_input, "grid step must be positive");
  IntervalCover base = attractor_cover(k, depth);
  IntervalCover diff = minkowski(base, MinkOp::DIFF, base);
  SampleSet out{{}, {}, depth, k, exclusion};
  for (std::size_t i = 0;; ++i) {
    Rat x = grid_step * static_cast<long>(i);
    if (x > 1) break;
    if (exclusion.contains(x)) continue;
    bool clear = true;
    for (const Rat& y : out.points) {
      Rat fwd = x - y;
      Rat bwd = y - x;
      if (diff.contains(fwd) || diff.contains(bwd)) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    out.points.push_back(x);
    out.steps.push_back(i);
    if (out.points.size() == count) return out;
  }
  throw Error(errc::grid_exhausted, "grid ended with " + std::to_string(out.points.size()) +
                                        " of " + std::to_string(count) + " points");
}

int verify_single_hit(const SampleSet& x, const Rat& t, int depth) {
  if (depth > x.depth)
    throw Error(errc::bad_input, "check depth exceeds the sample's avoidance depth");
  IntervalCover cover = attractor_cover(x.kifs, depth);
  int hits = 0;
  for (const Rat& p : x.points) {
    Rat shifted = p + t;
    if (cover.contains(shifted)) ++hits;
  }
  return hits;
}

std::string SampleSet::to_json_text() const {
  njson j;
  j["depth"] = depth;
  j["ifs"] = kifs.str();
  j["exclusion"] = cover_json(exclusion);
  njson pts = njson::array();
  for (const Rat& p : points) pts.push_back(rat_str(p));
  j["points"] = pts;
  j["steps"] = steps;
  return j.dump(2);
}

SampleSet SampleSet::from_json_text(const std::string& text) {
  njson j = njson::parse(text);
  std::vector<Rat> pts;
  for (const auto& e : j.at("points")) pts.push_back(parse_rat(e.get<std::string>()));
  return SampleSet{std::move(pts), j.at("steps").get<std::vector<std::size_t>>(),
                   j.at("depth").get<int>(), SimilarIfs::parse(j.at("ifs").get<std::string>()),
                   cover_from_json(j.at("exclusion"))};
}

std::string SampleSet::to_csv() const {
  std::string out = "point,step\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    out += rat_str(points[i]) + "," + std::to_string(steps[i]) + "\n";
  return out;
}

}  // namespace ekbench
