#include "ekbench/dimension.hpp"

#include <cassert>
#include <cmath>
#include <vector>

#include "ekbench/error.hpp"

namespace ekbench {

namespace {

Rat rat_pow(const Rat& x, int e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), e);
  Rat out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

DimensionEstimate similarity_dimension(const SimilarIfs& ifs) {
  if (!ifs.non_overlapping())
    throw Error(errc::overlapping_ifs, "similarity dimension needs disjoint map images");
  const auto& maps = ifs.maps();
  bool all_equal = true;
  for (const SimilarMap& m : maps)
    if (m.ratio != maps[0].ratio) all_equal = false;
  if (all_equal) {
    double r = rat_double(maps[0].ratio);
    double s = std::log(static_cast<double>(maps.size())) / std::log(1.0 / r);
    return {s, DimMethod::SIMILARITY, 0.0};
  }
  std::vector<double> lnr;
  for (const SimilarMap& m : maps) lnr.push_back(std::log(rat_double(m.ratio)));
  auto f = [&](double s) {
    double sum = -1.0;
    for (double l : lnr) sum += std::exp(s * l);
    return sum;
  };
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), DimMethod::SIMILARITY, 0.0};
}

long box_count(const IntervalCover& cover, const Rat& side) {
  if (side <= 0) throw Error(errc::bad_input, "grid side must be positive");
  long count = 0;
  bool have_last = false;
  mpz_class last;
  for (const Interval& iv : cover.intervals()) {
    // [a,b] meets box [j*side,(j+1)*side) exactly for floor(a/side) <= j
    // <= floor(b/side); adjacent intervals may share the boundary box.
    mpz_class lo_j = rat_floor(iv.lo / side).get_num();
    mpz_class hi_j = rat_floor(iv.hi / side).get_num();
    if (have_last && lo_j <= last) lo_j = last + 1;
    if (hi_j >= lo_j) count += mpz_class(hi_j - lo_j + 1).get_si();
    if (!have_last || hi_j > last) last = hi_j;
    have_last = true;
  }
  return count;
}

DimensionEstimate box_dimension_fit(const SimilarIfs& ifs, int depth_lo, int depth_hi) {
  if (depth_lo < 0 || depth_hi < depth_lo + 1)
    throw Error(errc::bad_input, "box fit needs at least two nonnegative depths");
  Rat r_max = ifs.maps()[0].ratio;
  for (const SimilarMap& m : ifs.maps()) r_max = std::max(r_max, m.ratio);
  std::vector<double> xs, ys;
  for (int d = depth_lo; d <= depth_hi; ++d) {
    IntervalCover cover = attractor_cover(ifs, d);
    long n = box_count(cover, rat_pow(r_max, d));
    xs.push_back(d * std::log(1.0 / rat_double(r_max)));
    ys.push_back(std::log(static_cast<double>(n)));
  }
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (slope * xs[i] + intercept);
    ss += e * e;
  }
  return {slope, DimMethod::BOX_FIT, std::sqrt(ss / n)};
}

ChooseN choose_N(const Rat& dim_upper) {
  if (dim_upper < 0) throw Error(errc::bad_input, "dimension bound must be nonnegative");
  if (dim_upper >= 1)
    throw Error(errc::dim_too_large, "need dimension bound < 1, got " + rat_str(dim_upper));
  Rat inv = 1 / (1 - dim_upper);
  Rat fl = rat_floor(inv);
  if (fl.get_num() > 1'000'000'000)
    throw Error(errc::dim_too_large, "dimension bound too close to 1");
  int n = static_cast<int>(fl.get_num().get_si()) + 1;
  ChooseN out{n, n * dim_upper + 1};
  assert(out.certificate < n);
  return out;
}

}  // namespace ekbench
