#include "ekbench/fatness.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "ekbench/error.hpp"

namespace ekbench {

namespace {

// Local mask increment with a popcount cap.  Kept separate from the
// enumeration helpers in slalom.cpp: brute_force_is_fat goes through
// those, this search must not.
std::optional<std::uint64_t> next_block(std::uint64_t x, int width, int k) {
  const std::uint64_t limit = (width >= 64) ? ~0ull : (1ull << width);
  if (k <= 0) return std::nullopt;
  ++x;
  while (x < limit && std::popcount(x) > k) x += x & (~x + 1);
  if (x >= limit) return std::nullopt;
  return x;
}

// Adversary search for a killer of exact height h: assign blocked sets
// column by column (lexicographic mask order, leftmost column most
// significant) and track which long members are still unhit.
struct KillerSearch {
  const std::vector<DigitString>& mem;
  std::size_t base_len;
  std::size_t h;
  int k;
  SearchStats& stats;
  std::vector<std::uint64_t> masks;

  KillerSearch(const FiniteFamily& f, std::size_t height, int width, SearchStats& st)
      : mem(f.members()), base_len(f.base().size()), h(height), k(width), stats(st),
        masks(h - base_len, 0) {}

  // Union bound on how many alive members the remaining columns can hit:
  // each column contributes its k largest digit-group sizes.  Below the
  // alive count, no completion kills everything.
  std::size_t kill_capacity(const std::vector<int>& alive, std::size_t from_col) const {
    std::size_t total = 0;
    for (std::size_t j = from_col; j < h; ++j) {
      int counts[kMaxDigits + 3] = {0};
      for (int i : alive) ++counts[mem[i].at(j)];
      int a = alphabet_size(j);
      std::vector<int> groups(counts, counts + a);
      std::partial_sort(groups.begin(), groups.begin() + std::min<std::size_t>(k, a),
                        groups.end(), std::greater<int>());
      for (int g = 0; g < std::min<int>(k, a); ++g) total += groups[g];
      if (total >= alive.size()) return total;
    }
    return total;
  }

  bool dfs(std::size_t col, const std::vector<int>& alive) {
    ++stats.examined;
    if (alive.empty()) {
      // Every completion kills; take the lexicographically least one.
      for (std::size_t j = col; j < h; ++j)
        masks[j - base_len] = (j + 1 == h) ? 1 : 0;
      return true;
    }
    if (col == h) return false;  // full assignment escaped by an alive member
    if (kill_capacity(alive, col) < alive.size()) {
      ++stats.pruned;
      return false;
    }
    int width = alphabet_size(col);
    bool last = (col + 1 == h);
    std::optional<std::uint64_t> m =
        last ? next_block(0, width, k) : std::optional<std::uint64_t>(0);
    std::vector<int> alive2;
    while (m) {
      masks[col - base_len] = *m;
      alive2.clear();
      for (int i : alive)
        if (!((*m >> mem[i].at(col)) & 1)) alive2.push_back(i);
      if (dfs(col + 1, alive2)) return true;
      m = next_block(*m, width, k);
    }
    masks[col - base_len] = 0;
    return false;
  }

  Slalom killer_slalom(const DigitString& base) const {
    std::map<int, std::vector<int>> cols;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      std::vector<int> digits;
      for (int d = 0; d < 64; ++d)
        if ((masks[j] >> d) & 1) digits.push_back(d);
      if (!digits.empty()) cols[static_cast<int>(base_len + j)] = digits;
    }
    return Slalom(base, cols);
  }
};

Slalom least_slalom_of_height(const DigitString& base, std::size_t h) {
  std::map<int, std::vector<int>> cols;
  cols[static_cast<int>(h) - 1] = {0};
  return Slalom(base, cols);
}

}  // namespace

FatnessVerdict is_fat(const FiniteFamily& f, int k, std::size_t height) {
  if (k < 0) throw Error(errc::bad_input, "negative slalom width");
  FatnessVerdict v;
  v.k = k;
  v.height = height;
  v.is_fat = true;
  const std::size_t base_len = f.base().size();
  for (std::size_t h = base_len; h <= height; ++h) {
    if (h == base_len) {
      // The blocked-nothing slalom of height |base|: escaped iff F has a member.
      ++v.searched.examined;
      if (f.empty()) {
        v.is_fat = false;
        v.killer = Slalom(f.base());
        return v;
      }
      continue;
    }
    if (k < 1) continue;  // no width-0 slalom has a nonempty column
    if (alphabet_size(h - 1) > 63)
      throw Error(errc::bad_input, "fatness search capped at column alphabet 63");
    std::vector<int> alive;
    for (std::size_t i = 0; i < f.members().size(); ++i)
      if (f.members()[i].size() >= h) alive.push_back(static_cast<int>(i));
    if (alive.empty()) {
      // No member is long enough: every height-h slalom kills.
      ++v.searched.examined;
      v.is_fat = false;
      v.killer = least_slalom_of_height(f.base(), h);
      return v;
    }
    KillerSearch search(f, h, k, v.searched);
    if (search.dfs(base_len, alive)) {
      v.is_fat = false;
      v.killer = search.killer_slalom(f.base());
      return v;
    }
  }
  return v;
}

FatnessVerdict brute_force_is_fat(const FiniteFamily& f, int k, std::size_t height) {
  if (k < 0) throw Error(errc::bad_input, "negative slalom width");
  FatnessVerdict v;
  v.k = k;
  v.height = height;
  v.is_fat = true;
  for (const Slalom& s : enumerate_slaloms(f.base(), k, height)) {
    ++v.searched.examined;
    bool escaped = false;
    for (const auto& t : f.members()) {
      if (escapes(t, s)) {
        escaped = true;
        break;
      }
    }
    if (!escaped) {
      v.is_fat = false;
      v.killer = s;
      return v;
    }
  }
  return v;
}

std::optional<DigitString> find_escaper(const FiniteFamily& f, const Slalom& s,
                                        std::size_t min_length) {
  for (const auto& t : f.members()) {
    if (t.size() >= min_length && escapes(t, s)) return t;
  }
  return std::nullopt;
}

RemovalResult remove_finite(const FiniteFamily& f, const std::vector<DigitString>& removed,
                            int k, std::size_t height) {
  FiniteFamily rest = f.without(removed);
  FatnessVerdict v = is_fat(rest, k, height);
  return RemovalResult{std::move(rest), std::move(v)};
}

Slalom parallel_augmented(const Slalom& s, const DigitString& sigma) {
  Slalom out = s;
  for (std::size_t i = s.base_length(); i < sigma.size(); ++i)
    out = out.augmented(i, static_cast<int>(i) + 2 - sigma.at(i));
  return out;
}

RemovalResult prune_parallel(const FiniteFamily& f, const DigitString& sigma, int k,
                             std::size_t height) {
  if (k < 1) throw Error(errc::bad_input, "prune_parallel needs k >= 1");
  if (!parallel(f.base(), sigma))
    throw Error(errc::base_not_parallel,
                "base " + f.base().str() + " is anti-parallel to " + sigma.str());
  std::vector<DigitString> keep;
  for (const auto& t : f.members())
    if (parallel(t, sigma)) keep.push_back(t);
  FiniteFamily pruned(f.base(), std::move(keep));
  FatnessVerdict v = is_fat(pruned, k - 1, height);
  return RemovalResult{std::move(pruned), std::move(v)};
}

}  // namespace ekbench
