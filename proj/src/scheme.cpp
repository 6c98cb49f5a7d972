#include "ekbench/scheme.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ekbench/error.hpp"

namespace ekbench {

namespace {

using njson = nlohmann::ordered_json;

bool next_combination(std::vector<std::size_t>& idx, std::size_t size) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < size) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool interior_meets(const IntervalCover& p, const Interval& iv) {
  if (!(iv.lo < iv.hi)) return false;
  const IntervalCover inside = p.intersect(iv);
  for (const Interval& seg : inside.intervals()) {
    if (seg.lo < seg.hi) return true;
    if (iv.lo < seg.lo && seg.lo < iv.hi) return true;  // interior point of iv
  }
  return false;
}

bool pairwise_disjoint(const std::vector<Interval>& ivs) {
  for (std::size_t i = 0; i < ivs.size(); ++i)
    for (std::size_t j = i + 1; j < ivs.size(); ++j)
      if (intervals_overlap(ivs[i], ivs[j])) return false;
  return true;
}

// Candidate subintervals of j at the given piece width: segments of
// P ∩ j are split evenly, keeping the left 3/4 of each slot so
// neighbouring pieces stay apart.
std::vector<Interval> pieces_of(const Interval& j, const IntervalCover& p, const Rat& width) {
  std::vector<Interval> out;
  const IntervalCover inside = p.intersect(j);
  for (const Interval& seg : inside.intervals()) {
    if (!(seg.lo < seg.hi)) continue;
    Rat len = seg.hi - seg.lo;
    Rat ratio = len / width;
    long m = rat_floor(ratio).get_num().get_si() + (rat_floor(ratio) == ratio ? 0 : 1);
    m = std::max(1L, std::min(m, 48L));
    Rat u = len / m;
    for (long i = 0; i < m; ++i) {
      Rat lo = seg.lo + i * u;
      out.push_back({lo, lo + 3 * u / 4});
    }
    if (out.size() >= 64) break;
  }
  if (out.size() > 64) out.resize(64);
  return out;
}

long long checked_combination_count(std::size_t size, int n, std::size_t cap) {
  long long c = 1;
  for (int i = 0; i < n; ++i) {
    c = c * static_cast<long long>(size - i) / (i + 1);
    if (c > static_cast<long long>(cap)) return -1;
  }
  return c;
}

}  // namespace

std::vector<Interval> shrink_step(const std::vector<Interval>& js, const IntervalCover& p,
                                  const SimilarIfs& kprime, int base_depth, int max_depth) {
  if (js.empty()) throw Error(errc::bad_input, "shrink needs at least one interval");
  for (const Interval& j : js)
    if (!interior_meets(p, j))
      throw Error(errc::bad_input, "interval interior misses the P cover: " + interval_str(j));
  if (pairwise_disjoint(js) && product_avoids_fn(js, p, kprime, base_depth))
    return js;
  for (int d = std::max(base_depth, 0); d <= max_depth; ++d) {
    int round = d - base_depth;
    std::vector<std::vector<Interval>> pieces;
    bool viable = true;
    for (const Interval& j : js) {
      Rat width = (j.hi - j.lo) / (1L << std::min(round + 1, 24));
      std::vector<Interval> cand = width > 0 ? pieces_of(j, p, width) : std::vector<Interval>{};
      if (cand.empty()) viable = false;
      pieces.push_back(std::move(cand));
    }
    if (!viable) continue;
    std::vector<std::size_t> idx(js.size(), 0);
    while (true) {
      std::vector<Interval> tuple;
      for (std::size_t i = 0; i < js.size(); ++i) tuple.push_back(pieces[i][idx[i]]);
      if (pairwise_disjoint(tuple) && product_avoids_fn(tuple, p, kprime, d)) return tuple;
      std::size_t i = js.size();
      while (i-- > 0) {
        if (++idx[i] < pieces[i].size()) break;
        idx[i] = 0;
        if (i == 0) goto next_depth;
      }
    }
  next_depth:;
  }
  throw Error(errc::resolution_exhausted,
              "no avoiding subintervals within depth " + std::to_string(max_depth));
}

CantorScheme build_scheme(const IntervalCover& p, const SimilarIfs& kprime, int n,
                          int target_depth, int max_cover_depth, std::size_t tuple_cap) {
  if (n < 2) throw Error(errc::bad_input, "scheme branching must be at least 2");
  if (target_depth < 0) throw Error(errc::bad_input, "scheme depth must be nonnegative");
  // choose_N gate in the form sum ratio^((n-1)/n) < 1: the tuple clause
  // is only reachable when n exceeds 1/(1 - dim K').
  double q = (n - 1.0) / n;
  double sum = 0.0;
  for (const SimilarMap& m : kprime.maps()) sum += std::pow(rat_double(m.ratio), q);
  if (!(sum < 1.0 - 1e-9))
    throw Error(errc::bad_input,
                "branching " + std::to_string(n) + " is below the choose_N threshold for K'");

  const Interval* seed = nullptr;
  for (const Interval& iv : p.intervals())
    if (iv.lo < iv.hi) {
      seed = &iv;
      break;
    }
  if (!seed) throw Error(errc::resolution_exhausted, "P cover has empty interior");
  Rat unit_cap = seed->lo + 1;
  Interval l0{seed->lo, std::min(seed->hi, unit_cap)};

  CantorScheme sch{n, {{l0}}, p, kprime, {0}};
  const int base_depth = 4;
  for (int k = 0; k + 1 <= target_depth; ++k) {
    Rat max_diam = Rat(1, k + 3);  // children live in level k+1
    std::vector<Interval> level;
    for (const Interval& parent : sch.levels.back()) {
      IntervalCover room = p.intersect(parent);
      const Interval* host = nullptr;
      for (const Interval& seg : room.intervals())
        if (seg.lo < seg.hi) {
          host = &seg;
          break;
        }
      if (!host)
        throw Error(errc::resolution_exhausted,
                    "no room for children inside " + interval_str(parent));
      Rat step = (host->hi - host->lo) / n;
      Rat half = step / 2;
      Rat u = std::min(half, max_diam);
      for (int i = 0; i < n; ++i) {
        Rat lo = host->lo + i * step;
        level.push_back({lo, lo + u});
      }
    }
    long long combos = checked_combination_count(level.size(), n, tuple_cap);
    if (combos < 0)
      throw Error(errc::budget_exceeded,
                  "tuple count for level " + std::to_string(k + 1) + " exceeds cap");
    int level_depth = base_depth;
    std::vector<std::size_t> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    if (static_cast<int>(level.size()) >= n) {
      do {
        std::vector<Interval> tuple;
        for (int i = 0; i < n; ++i) tuple.push_back(level[idx[i]]);
        if (!pairwise_disjoint(tuple) || !product_avoids_fn(tuple, p, kprime, level_depth)) {
          std::vector<Interval> shrunk =
              shrink_step(tuple, p, kprime, base_depth, max_cover_depth);
          for (int i = 0; i < n; ++i) level[idx[i]] = shrunk[i];
          int d = level_depth;
          while (d <= max_cover_depth && !product_avoids_fn(shrunk, p, kprime, d)) ++d;
          if (d > max_cover_depth)
            throw Error(errc::resolution_exhausted, "shrunk tuple failed recertification");
          level_depth = std::max(level_depth, d);
        }
      } while (next_combination(idx, level.size()));
    }
    sch.levels.push_back(std::move(level));
    sch.cert_depths.push_back(level_depth);
  }
  return sch;
}

SchemeReport validate_scheme(const CantorScheme& s) {
  SchemeReport r;
  for (ClauseResult& c : r.clauses) c.pass = true;
  if (s.levels.empty() || s.cert_depths.size() != s.levels.size()) {
    r.clauses[0] = {false, "missing levels or certificate depths"};
    r.pass = false;
    return r;
  }
  // (1) n^k intervals, pairwise disjoint
  double expected = 1;
  for (std::size_t k = 0; k < s.levels.size(); ++k, expected *= s.n) {
    if (static_cast<double>(s.levels[k].size()) != expected)
      r.clauses[0] = {false, "level " + std::to_string(k) + " has " +
                                 std::to_string(s.levels[k].size()) + " intervals"};
    auto sorted = s.levels[k];
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      if (!(sorted[i].hi < sorted[i + 1].lo))
        r.clauses[0] = {false, "level " + std::to_string(k) + " intervals touch"};
  }
  // (2) nesting and (3) exactly n children
  for (std::size_t k = 0; k + 1 < s.levels.size(); ++k) {
    std::vector<int> child_count(s.levels[k].size(), 0);
    for (const Interval& c : s.levels[k + 1]) {
      bool nested = false;
      for (std::size_t pi = 0; pi < s.levels[k].size(); ++pi) {
        const Interval& par = s.levels[k][pi];
        if (par.lo <= c.lo && c.hi <= par.hi) {
          nested = true;
          ++child_count[pi];
          break;
        }
      }
      if (!nested)
        r.clauses[1] = {false, "interval " + interval_str(c) + " not nested in level " +
                                   std::to_string(k)};
    }
    for (std::size_t pi = 0; pi < child_count.size(); ++pi)
      if (child_count[pi] != s.n)
        r.clauses[2] = {false, "parent " + std::to_string(pi) + " of level " +
                                   std::to_string(k) + " has " +
                                   std::to_string(child_count[pi]) + " children"};
  }
  // (4) interiors meet P
  for (std::size_t k = 0; k < s.levels.size(); ++k)
    for (const Interval& iv : s.levels[k])
      if (!interior_meets(s.p, iv))
        r.clauses[3] = {false, "interior of " + interval_str(iv) + " misses P"};
  // (5) diameters
  for (std::size_t k = 0; k < s.levels.size(); ++k)
    for (const Interval& iv : s.levels[k])
      if (iv.hi - iv.lo > Rat(1, static_cast<long>(k) + 1))
        r.clauses[4] = {false, "level " + std::to_string(k) + " interval wider than 1/" +
                                   std::to_string(k + 1)};
  // (6) every tuple of distinct same-level intervals certified
  for (std::size_t k = 0; k < s.levels.size(); ++k) {
    if (static_cast<int>(s.levels[k].size()) < s.n) continue;
    std::vector<std::size_t> idx(s.n);
    for (int i = 0; i < s.n; ++i) idx[i] = i;
    do {
      std::vector<Interval> tuple;
      for (int i = 0; i < s.n; ++i) tuple.push_back(s.levels[k][idx[i]]);
      if (!product_avoids_fn(tuple, s.p, s.kprime, s.cert_depths[k])) {
        r.clauses[5] = {false, "uncertified tuple at level " + std::to_string(k)};
        break;
      }
    } while (next_combination(idx, s.levels[k].size()));
    if (!r.clauses[5].pass) break;
  }
  r.pass = true;
  for (const ClauseResult& c : r.clauses) r.pass = r.pass && c.pass;
  return r;
}

HitReport translate_hit_count(const CantorScheme& s, const Rat& r, int check_depth) {
  if (s.levels.empty()) throw Error(errc::bad_input, "scheme has no levels");
  HitReport out;
  out.check_depth = check_depth;
  IntervalCover shifted = translate(attractor_cover(s.kprime, check_depth), r);
  const auto& bottom = s.levels.back();
  for (std::size_t ci = 0; ci < bottom.size(); ++ci) {
    IntervalCover part = s.p.intersect(bottom[ci]);
    IntervalCover hit = part.intersect(shifted);
    CellHit cell{ci, hit.empty(), std::nullopt};
    if (!hit.empty()) {
      ++out.possible_hits;
      for (const Interval& iv : hit.intervals()) {
        if (ifs_member(s.kprime, iv.lo - r) == std::optional<bool>(true)) {
          cell.exact_point = iv.lo;
          break;
        }
        if (ifs_member(s.kprime, iv.hi - r) == std::optional<bool>(true)) {
          cell.exact_point = iv.hi;
          break;
        }
      }
      if (cell.exact_point) ++out.exact_hits;
    }
    out.cells.push_back(std::move(cell));
  }
  out.hard_invariant_ok = out.exact_hits < s.n;
  return out;
}

std::string CantorScheme::to_json_text() const {
  njson j;
  j["n"] = n;
  j["kprime"] = kprime.str();
  njson pj = njson::array();
  for (const Interval& iv : p.intervals()) pj.push_back({rat_str(iv.lo), rat_str(iv.hi)});
  j["p"] = pj;
  j["certDepths"] = cert_depths;
  njson lv = njson::array();
  for (const auto& level : levels) {
    njson lj = njson::array();
    for (const Interval& iv : level) lj.push_back({rat_str(iv.lo), rat_str(iv.hi)});
    lv.push_back(lj);
  }
  j["levels"] = lv;
  return j.dump(2);
}

CantorScheme CantorScheme::from_json_text(const std::string& text) {
  njson j = njson::parse(text);
  std::vector<Interval> pv;
  for (const auto& e : j.at("p"))
    pv.push_back({parse_rat(e.at(0).get<std::string>()), parse_rat(e.at(1).get<std::string>())});
  std::vector<std::vector<Interval>> levels;
  for (const auto& lj : j.at("levels")) {
    std::vector<Interval> level;
    for (const auto& e : lj)
      level.push_back(
          {parse_rat(e.at(0).get<std::string>()), parse_rat(e.at(1).get<std::string>())});
    levels.push_back(std::move(level));
  }
  return CantorScheme{j.at("n").get<int>(), std::move(levels), IntervalCover(std::move(pv)),
                      SimilarIfs::parse(j.at("kprime").get<std::string>()),
                      j.at("certDepths").get<std::vector<int>>()};
}

}  // namespace ekbench
