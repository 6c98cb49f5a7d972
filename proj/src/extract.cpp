#include "ekbench/fatness.hpp"

#include <algorithm>

#include "ekbench/error.hpp"

namespace ekbench {

namespace {

// Shared pick loop for both extraction variants.  Walks the width-(k-1)
// slaloms of height <= target_height in canonical order; each round
// augments the current slalom with the last digit of every earlier pick
// and asks find_pick for an escaper strictly longer than the previous
// one.  Strictly increasing lengths keep the augmented width below k,
// so k-fatness of the source is exactly what makes every round succeed.
template <typename FindPick>
ExtractResult extract_loop(const DigitString& base, int k, std::size_t target_height,
                           FindPick&& find_pick) {
  if (k < 1) throw Error(errc::bad_input, "extraction needs k >= 1");
  std::vector<Slalom> slaloms = enumerate_slaloms(base, k - 1, target_height);
  std::vector<DigitString> picks;
  std::size_t prev_len = base.size();
  for (const Slalom& s : slaloms) {
    Slalom aug = s;
    for (const DigitString& t : picks)
      aug = aug.augmented(t.size() - 1, t.at(t.size() - 1));
    std::optional<DigitString> pick = find_pick(aug, prev_len + 1);
    if (!pick)
      throw Error(errc::insufficient_fatness,
                  "no escaper of " + aug.str() + " with length > " + std::to_string(prev_len));
    picks.push_back(*pick);
    prev_len = pick->size();
  }
  ExtractResult out{FiniteFamily(base, std::move(picks)), {}, slaloms.size()};
  out.certificate = is_fat(out.picks, k - 1, target_height);
  if (!out.certificate.is_fat)
    throw std::logic_error("extraction produced an uncertifiable family");
  return out;
}

}  // namespace

ExtractResult extract_incomparable(const FiniteFamily& f, int k, std::size_t target_height) {
  return extract_loop(f.base(), k, target_height,
                      [&](const Slalom& aug, std::size_t min_len) {
                        return find_escaper(f, aug, min_len);
                      });
}

std::optional<DigitString> least_escaper(const Slalom& s, std::size_t min_length,
                                         std::size_t max_length) {
  std::size_t len = std::max({min_length, s.height(), s.base_length()});
  if (len > max_length || len > kMaxDigits) return std::nullopt;
  DigitString t = s.base();
  for (std::size_t i = t.size(); i < len; ++i) {
    int d = 0;
    while (d < alphabet_size(i) && s.blocks(i, d)) ++d;
    if (d == alphabet_size(i)) return std::nullopt;
    t = t.extended(d);
  }
  return t;
}

ExtractResult extract_incomparable_full(const DigitString& base, std::size_t depth_cap, int k,
                                        std::size_t target_height) {
  return extract_loop(base, k, target_height,
                      [&](const Slalom& aug, std::size_t min_len) {
                        // Against the full tree the shortlex-first escaper is
                        // the greedy one: minimal feasible length, least
                        // unblocked digit per column.  The augmented width
                        // stays at most |base| + 2 < alphabet size, so columns
                        // never block fully here.
                        return least_escaper(aug, min_len, depth_cap);
                      });
}

}  // namespace ekbench
