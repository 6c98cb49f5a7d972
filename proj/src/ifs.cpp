#include "ekbench/ifs.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ekbench/error.hpp"

namespace ekbench {

SimilarIfs::SimilarIfs(std::vector<SimilarMap> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw Error(errc::bad_input, "IFS needs at least one map");
  for (const SimilarMap& m : maps_) {
    if (m.ratio <= 0 || m.ratio >= 1)
      throw Error(errc::bad_input, "IFS ratio outside (0,1): " + rat_str(m.ratio));
  }
  Rat lo = maps_[0].offset / (1 - maps_[0].ratio);
  Rat hi = lo;
  for (const SimilarMap& m : maps_) {
    Rat fixed = m.offset / (1 - m.ratio);
    lo = std::min(lo, fixed);
    hi = std::max(hi, fixed);
  }
  bounding_ = {lo, hi};
  std::vector<Interval> images;
  for (std::size_t i = 0; i < maps_.size(); ++i) images.push_back(image(i, bounding_));
  std::sort(images.begin(), images.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  non_overlapping_ = true;
  for (std::size_t i = 0; i + 1 < images.size(); ++i) {
    if (images[i + 1].lo < images[i].hi) {
      non_overlapping_ = false;
      break;
    }
  }
}

Rat SimilarIfs::apply(std::size_t i, const Rat& x) const {
  return maps_[i].ratio * x + maps_[i].offset;
}

Interval SimilarIfs::image(std::size_t i, const Interval& iv) const {
  return {apply(i, iv.lo), apply(i, iv.hi)};
}

SimilarIfs SimilarIfs::parse(const std::string& text) {
  std::vector<SimilarMap> maps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    std::string part = text.substr(pos, end - pos);
    std::size_t comma = part.find(',');
    if (comma == std::string::npos)
      throw Error(errc::bad_input, "IFS map needs 'ratio,offset': '" + part + "'");
    maps.push_back({parse_rat(part.substr(0, comma)), parse_rat(part.substr(comma + 1))});
    pos = end + 1;
    if (end == text.size()) break;
  }
  return SimilarIfs(std::move(maps));
}

std::string SimilarIfs::str() const {
  std::string out;
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (i) out += ";";
    out += rat_str(maps_[i].ratio) + "," + rat_str(maps_[i].offset);
  }
  return out;
}

SimilarIfs SimilarIfs::base_digits(int base, const std::vector<int>& digits) {
  if (base < 2) throw Error(errc::bad_input, "digit IFS needs base >= 2");
  if (digits.empty()) throw Error(errc::bad_input, "digit IFS needs at least one digit");
  std::vector<SimilarMap> maps;
  for (int d : digits) {
    if (d < 0 || d >= base)
      throw Error(errc::bad_input, "digit " + std::to_string(d) + " outside base");
    maps.push_back({Rat(1, base), Rat(d, base)});
  }
  return SimilarIfs(std::move(maps));
}

SimilarIfs SimilarIfs::middle(const Rat& alpha) {
  if (alpha <= 0 || alpha >= 1)
    throw Error(errc::bad_input, "middle-alpha needs alpha in (0,1)");
  Rat r = (1 - alpha) / 2;
  return SimilarIfs({{r, Rat(0)}, {r, 1 - r}});
}

IntervalCover attractor_cover(const SimilarIfs& ifs, int depth, std::size_t interval_cap) {
  if (depth < 0) throw Error(errc::bad_input, "cover depth must be nonnegative");
  std::vector<Interval> cur{ifs.bounding()};
  for (int d = 0; d < depth; ++d) {
    if (cur.size() * ifs.map_count() > interval_cap)
      throw Error(errc::budget_exceeded,
                  "cover interval count " + std::to_string(cur.size() * ifs.map_count()));
    std::vector<Interval> next;
    next.reserve(cur.size() * ifs.map_count());
    for (const Interval& iv : cur)
      for (std::size_t i = 0; i < ifs.map_count(); ++i) next.push_back(ifs.image(i, iv));
    cur = IntervalCover(std::move(next)).intervals();
  }
  return IntervalCover(std::move(cur));
}

std::optional<bool> ifs_member(const SimilarIfs& ifs, const Rat& x, std::size_t node_budget) {
  if (!interval_contains(ifs.bounding(), x)) return false;
  // Preimage DFS.  A value repeating along the current chain is a fixed
  // point of a composed contraction, hence an attractor member, and
  // membership propagates back down the chain.  A value whose whole
  // in-bounds preimage tree was exhausted cycle-free supports no
  // infinite chain, so it is certifiably outside; that verdict does not
  // depend on the path above it, making the failure memo sound.
  std::set<Rat> path;
  std::set<Rat> failed;
  std::size_t budget = node_budget;
  bool exhausted = false;
  std::function<bool(const Rat&)> descend = [&](const Rat& v) -> bool {
    if (path.count(v)) return true;
    if (failed.count(v)) return false;
    if (budget == 0) {
      exhausted = true;
      return false;
    }
    --budget;
    path.insert(v);
    for (std::size_t i = 0; i < ifs.map_count(); ++i) {
      Rat y = (v - ifs.maps()[i].offset) / ifs.maps()[i].ratio;
      if (!interval_contains(ifs.bounding(), y)) continue;
      if (descend(y)) {
        path.erase(v);
        return true;
      }
      if (exhausted) break;
    }
    path.erase(v);
    if (!exhausted) failed.insert(v);
    return false;
  };
  if (descend(x)) return true;
  if (exhausted) return std::nullopt;
  return false;
}

}  // namespace ekbench
